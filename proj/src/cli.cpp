#include "cwg/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cwg/balance.hpp"
#include "cwg/consensus.hpp"
#include "cwg/generators.hpp"
#include "cwg/io.hpp"
#include "cwg/laplacian.hpp"
#include "cwg/linalg.hpp"
#include "cwg/lti.hpp"
#include "cwg/partition.hpp"

namespace cwg {

namespace {

using nlohmann::json;

constexpr std::size_t kMaxConnectedAttempts = 100;
constexpr double kDefaultConsensusTol = 1e-6;

/// A failure that should be reported as a usage error.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  bool json_output = false;
  double tol = 0.0;
  std::string config_path;
  std::string out_path;

  std::string graph_path;
  std::string mode;
  std::string x0_spec = "random:0";
  double kappa = 0.0;
  std::size_t steps = 0;
  double t_final = 0.0;
  double dt = 0.0;
  std::string scheme = "exact";
  std::string model_path;
  std::size_t stride = 0;
  std::size_t window = 5;
  double consensus_tol = kDefaultConsensusTol;

  std::size_t nodes = 150;
  double probability = 0.1;
  std::size_t partites = 4;
  std::vector<std::string> signatures;
  double modulus_lo = 1.0;
  double modulus_hi = 5.0;
  std::uint64_t seed = 0;
  bool connected = false;
  std::vector<std::size_t> sizes;
  std::vector<std::string> arguments;
  std::vector<double> moduli;
  std::vector<std::string> thetas;

  std::string which;
};

/// Flag value if given, else config entry, else fallback.
class Resolver {
 public:
  Resolver(const CLI::App& app, json config) : app_(app), config_(std::move(config)) {}

  template <typename T>
  T get(const std::string& flag, const std::string& key, const T& flag_value,
        const T& fallback) const {
    if (given(flag)) return flag_value;
    if (config_.contains(key)) {
      try {
        return config_.at(key).get<T>();
      } catch (const json::exception& e) {
        throw UsageError("config entry '" + key + "': " + e.what());
      }
    }
    return fallback;
  }

  bool has(const std::string& flag, const std::string& key) const {
    return given(flag) || config_.contains(key);
  }

 private:
  bool given(const std::string& flag) const {
    for (const CLI::App* a = &app_; a; a = a->get_parent()) {
      for (const CLI::Option* o : a->get_options()) {
        if (o->check_name(flag) && o->count() > 0) return true;
      }
    }
    return false;
  }

  const CLI::App& app_;
  json config_;
};

double env_tolerance() {
  const char* raw = std::getenv(kAngleToleranceEnv);
  if (!raw || !*raw) return kDefaultAngleTolerance;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw UsageError(std::string(kAngleToleranceEnv) + " must be a positive number, got '" + raw +
                     "'");
  }
  return v;
}

std::string fmt(double v) { return format_double(v); }

std::string fmt(std::complex<double> z) {
  std::string s = format_double(z.real());
  s += z.imag() < 0 || (z.imag() == 0 && std::signbit(z.imag())) ? " - " : " + ";
  s += format_double(std::abs(z.imag())) + "i";
  return s;
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json vector_json(const Eigen::VectorXcd& x) {
  json a = json::array();
  for (const auto& z : x) a.push_back(complex_json(z));
  return a;
}

json values_json(const std::vector<std::complex<double>>& values) {
  json a = json::array();
  for (const auto& z : values) a.push_back(complex_json(z));
  return a;
}

std::string render_cycle(const Graph& g, const WeakCycle& cycle) {
  std::string s;
  for (std::size_t k = 0; k < cycle.steps.size(); ++k) {
    s += std::to_string(cycle.nodes[k] + 1);
    s += cycle.steps[k].forward ? " -> " : " <- ";
  }
  if (!cycle.nodes.empty()) s += std::to_string(cycle.nodes.front() + 1);
  s += "  (argument sum " + fmt(cycle.argument_sum(g)) + ")";
  return s;
}

json cycle_json(const Graph& g, const WeakCycle& cycle) {
  json steps = json::array();
  for (const auto& st : cycle.steps) {
    const Edge& e = g.edge(st.edge_index);
    steps.push_back({{"edge", {e.source + 1, e.target + 1}}, {"forward", st.forward}});
  }
  std::vector<std::size_t> nodes;
  for (auto v : cycle.nodes) nodes.push_back(v + 1);
  return {{"nodes", nodes}, {"steps", steps}, {"argument_sum", cycle.argument_sum(g)}};
}

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw UsageError("model entry '" + name + "' must be a non-empty list of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw UsageError("model entry '" + name + "' has ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw UsageError("model entry '" + name + "' has a non-numeric value");
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

LtiAgentModel read_model(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
  for (const char* key : {"A", "B", "K"}) {
    if (!j.contains(key)) throw UsageError(path + ": model needs entries A, B and K");
  }
  return LtiAgentModel(matrix_from_json(j["A"], "A"), matrix_from_json(j["B"], "B"),
                       matrix_from_json(j["K"], "K"));
}

Eigen::VectorXcd initial_state(const std::string& spec, std::size_t size) {
  if (spec.rfind("random:", 0) == 0) {
    const std::string digits = spec.substr(7);
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw UsageError("--x0 random:<seed> needs a nonnegative integer seed");
    }
    PortableRng rng(seed);
    Eigen::VectorXcd x(static_cast<Eigen::Index>(size));
    for (auto& v : x) v = rng.uniform(-1.0, 1.0);
    return x;
  }
  Eigen::VectorXcd x = parse_complex_vector(read_text_file(spec));
  if (static_cast<std::size_t>(x.size()) != size) {
    throw DimensionError("initial state has " + std::to_string(x.size()) + " entries, expected " +
                         std::to_string(size));
  }
  return x;
}

std::vector<double> parse_angles(const std::vector<std::string>& texts) {
  std::vector<double> values;
  for (const auto& t : texts) {
    try {
      values.push_back(parse_angle(t));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return values;
}

std::optional<Eigen::VectorXcd> zeta_if_balanced(const Graph& g, double tol) {
  const auto thetas = balanced_signatures(g, tol);
  if (!thetas) return std::nullopt;
  return zeta_vector(*thetas);
}

void emit(std::ostream& out, const Options& o, const std::string& text) {
  if (o.out_path.empty()) {
    out << text;
  } else {
    write_text_file(o.out_path, text);
  }
}

int cmd_check(const Options& o, double tol, std::ostream& out) {
  const Graph g = read_graph_file(o.graph_path);
  const GraphBalance result = check_balance_any(g, tol);
  const bool connected = is_connected(g);
  if (result.balanced()) {
    const auto thetas = *result.signatures(g.node_count());
    const Eigen::VectorXcd zeta = zeta_vector(thetas);
    if (o.json_output) {
      out << json{{"balanced", true},
                  {"connected", connected},
                  {"tolerance", tol},
                  {"signatures", thetas},
                  {"zeta", vector_json(zeta)}}
                 .dump(2)
          << '\n';
    } else {
      out << "balanced (tolerance " << fmt(tol) << ")\n";
      if (!connected) out << "note: no node reaches every other node\n";
      out << "zeta:\n";
      for (std::size_t v = 0; v < thetas.size(); ++v) {
        out << "  " << v + 1 << "  theta " << fmt(thetas[v]) << "  " << fmt(zeta(static_cast<Eigen::Index>(v)))
            << '\n';
      }
    }
    return kExitOk;
  }

  const auto comp = std::find_if(result.components.begin(), result.components.end(),
                                 [](const ComponentBalance& c) { return !c.balanced(); });
  const BalanceWitness& w = *comp->report.witness;
  if (o.json_output) {
    out << json{{"balanced", false},
                {"connected", connected},
                {"tolerance", tol},
                {"witness",
                 {{"edge", {w.source + 1, w.target + 1}},
                  {"argument", w.actual_argument},
                  {"expected", w.expected_argument},
                  {"deviation", w.deviation}}},
                {"cycle", cycle_json(g, w.cycle)}}
               .dump(2)
        << '\n';
  } else {
    out << "unbalanced (tolerance " << fmt(tol) << ")\n";
    out << "witness edge " << w.source + 1 << " -> " << w.target + 1 << ": argument "
        << fmt(w.actual_argument) << ", signatures require " << fmt(w.expected_argument)
        << ", deviation " << fmt(w.deviation) << '\n';
    out << "cycle: " << render_cycle(g, w.cycle) << '\n';
  }
  return kExitUnbalanced;
}

int cmd_zeta(const Options& o, double tol, std::ostream& out) {
  const Graph g = read_graph_file(o.graph_path);
  const auto thetas = balanced_signatures(g, tol);
  if (!thetas) throw BalanceError("graph is not structurally balanced; run 'check' for a witness");
  const Partition p = extract_partition(*thetas, tol);
  const Eigen::VectorXcd zeta = zeta_vector(*thetas);
  if (o.json_output) {
    json nodes = json::array();
    for (std::size_t v = 0; v < thetas->size(); ++v) {
      nodes.push_back({{"node", v + 1},
                       {"theta", (*thetas)[v]},
                       {"zeta", complex_json(zeta(static_cast<Eigen::Index>(v)))},
                       {"partite", p.partite_of[v] + 1}});
    }
    out << json{{"nodes", nodes}, {"partite_signatures", p.partite_signature}}.dump(2) << '\n';
    return kExitOk;
  }
  out << "node,theta,re_zeta,im_zeta,partite\n";
  for (std::size_t v = 0; v < thetas->size(); ++v) {
    const auto z = zeta(static_cast<Eigen::Index>(v));
    out << v + 1 << ',' << fmt((*thetas)[v]) << ',' << fmt(z.real()) << ',' << fmt(z.imag()) << ','
        << p.partite_of[v] + 1 << '\n';
  }
  out << "# " << p.partite_count() << " partite(s)\n";
  return kExitOk;
}

std::size_t default_stride(std::size_t samples) { return std::max<std::size_t>(1, samples / 1000); }

int cmd_simulate(const Options& o, const Resolver& r, double tol, std::ostream& out,
                 std::ostream& err) {
  const Graph g = read_graph_file(o.graph_path);
  const std::size_t n = g.node_count();
  const std::string x0_spec = r.get<std::string>("--x0", "x0", o.x0_spec, "random:0");
  const double ctol = r.get("--consensus-tol", "consensus_tol", o.consensus_tol, kDefaultConsensusTol);
  std::size_t window = r.get<std::size_t>("--window", "window", o.window, 5);
  const std::optional<Eigen::VectorXcd> zeta = zeta_if_balanced(g, tol);

  Trajectory traj;
  Eigen::VectorXcd x0;
  Eigen::VectorXd kappa;
  if (o.mode == "dt") {
    x0 = initial_state(x0_spec, n);
    kappa = default_kappa(g);
    if (r.has("--kappa", "kappa")) kappa.setConstant(r.get("--kappa", "kappa", o.kappa, 0.0));
    std::size_t steps = default_dt_steps(g, kappa);
    if (const auto s = spectral_dt_steps(g, kappa)) steps = std::max(steps, *s);
    steps = r.get("--steps", "steps", o.steps, steps);
    traj = simulate_dt(g, x0, kappa, steps, r.get("--stride", "stride", o.stride, default_stride(steps)));
  } else if (o.mode == "ct") {
    x0 = initial_state(x0_spec, n);
    const double t_final = r.get("--t-final", "t_final", o.t_final, ct_horizon(g, 50.0));
    const double max_degree = in_degrees(g).maxCoeff();
    double dt = t_final / 1000.0;
    if (max_degree > 0.0) dt = std::min(dt, 0.5 / max_degree);
    dt = r.get("--dt", "dt", o.dt, dt);
    const std::string scheme = r.get<std::string>("--scheme", "scheme", o.scheme, "exact");
    if (scheme != "exact" && scheme != "rk4") throw UsageError("--scheme must be exact or rk4");
    const std::size_t samples = static_cast<std::size_t>(std::ceil(t_final / dt));
    traj = simulate_ct(g, x0, t_final, dt,
                       scheme == "rk4" ? IntegrationScheme::kRk4 : IntegrationScheme::kExact,
                       r.get("--stride", "stride", o.stride, default_stride(samples)));
  } else {
    const std::string model_path = r.get<std::string>("--model", "model", o.model_path, "");
    if (model_path.empty()) throw UsageError("simulate lti needs --model <file>");
    const LtiAgentModel model = read_model(model_path);
    x0 = initial_state(x0_spec, n * model.state_dim());
    const double t_final = r.get("--t-final", "t_final", o.t_final, 20.0);
    const double dt = r.get("--dt", "dt", o.dt, 0.01);
    const std::size_t samples = static_cast<std::size_t>(std::ceil(t_final / dt));
    traj = simulate_lti(g, model, x0, t_final, dt,
                        r.get("--stride", "stride", o.stride, default_stride(samples)));
  }
  for (const auto& w : traj.metadata.warnings) err << "warning: " << w << '\n';
  if (!o.out_path.empty()) write_text_file(o.out_path, serialize_trajectory(traj));

  if (!r.has("--window", "window")) window = std::min(window, std::max<std::size_t>(2, traj.size() / 2));
  window = std::min(window, traj.size());
  const ConsensusVerdict verdict = classify_outcome(traj, zeta, ctol, window);

  std::optional<Eigen::VectorXcd> limit;
  std::string limit_note;
  if (zeta && o.mode != "lti") {
    try {
      limit = o.mode == "dt" ? predict_limit(g, *zeta, x0, kappa) : predict_limit(g, *zeta, x0);
    } catch (const Error& e) {
      limit_note = e.what();
    }
  }

  if (o.json_output) {
    json j{{"protocol", o.mode},
           {"samples", traj.size()},
           {"final_time", traj.times.back()},
           {"verdict", to_string(verdict.kind)},
           {"c_estimate", complex_json(verdict.c_estimate)},
           {"max_residual", verdict.max_residual()},
           {"max_window_change", verdict.max_window_change},
           {"balanced", zeta.has_value()},
           {"final_state", vector_json(traj.final_state())}};
    if (limit) j["predicted_limit"] = vector_json(*limit);
    if (!traj.metadata.warnings.empty()) j["warnings"] = traj.metadata.warnings;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "protocol: " << o.mode << "\n";
  out << "samples: " << traj.size() << ", final time " << fmt(traj.times.back()) << '\n';
  out << "verdict: " << to_string(verdict.kind) << '\n';
  out << "c estimate: " << fmt(verdict.c_estimate) << '\n';
  out << "max residual: " << fmt(verdict.max_residual()) << '\n';
  out << "final state:\n";
  for (const auto& v : traj.final_state()) out << "  " << fmt(v) << '\n';
  if (limit) {
    out << "predicted limit:\n";
    for (const auto& v : *limit) out << "  " << fmt(v) << '\n';
  } else if (!limit_note.empty()) {
    out << "predicted limit: unavailable (" << limit_note << ")\n";
  }
  return kExitOk;
}

int cmd_spectrum(const Options& o, double tol, std::ostream& out) {
  const Graph g = read_graph_file(o.graph_path);
  const auto thetas = balanced_signatures(g, tol);
  const auto lap = sorted_eigenvalues(laplacian(g));
  std::optional<std::vector<std::complex<double>>> gauged;
  if (thetas) gauged = sorted_eigenvalues(nonnegative_laplacian(g).cast<std::complex<double>>());

  std::optional<ClosedLoopSpectra> loop;
  std::optional<std::vector<std::complex<double>>> loop_original;
  if (!o.model_path.empty()) {
    const LtiAgentModel model = read_model(o.model_path);
    if (thetas) {
      loop = closed_loop_spectrum(g, model, tol);
    } else {
      loop_original = sorted_eigenvalues(closed_loop_matrix(laplacian(g), model));
    }
  }

  if (o.json_output) {
    json j{{"balanced", thetas.has_value()}, {"laplacian", values_json(lap)}};
    if (gauged) {
      j["nonnegative_laplacian"] = values_json(*gauged);
      j["distance"] = assignment_distance(lap, *gauged);
    }
    if (loop) {
      j["closed_loop"] = {{"laplacian", values_json(loop->original)},
                          {"nonnegative_laplacian", values_json(loop->gauged)},
                          {"distance", loop->distance}};
    } else if (loop_original) {
      j["closed_loop"] = {{"laplacian", values_json(*loop_original)}};
    }
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  auto list = [&](const char* title, const std::vector<std::complex<double>>& values) {
    out << title << ":\n";
    for (const auto& z : values) out << "  " << fmt(z) << '\n';
  };
  out << (thetas ? "balanced\n" : "unbalanced\n");
  list("eigenvalues of L", lap);
  if (gauged) {
    list("eigenvalues of L-hat", *gauged);
    out << "assignment distance: " << fmt(assignment_distance(lap, *gauged)) << '\n';
  }
  if (loop) {
    list("closed loop with L", loop->original);
    list("closed loop with L-hat", loop->gauged);
    out << "closed-loop assignment distance: " << fmt(loop->distance) << '\n';
  } else if (loop_original) {
    list("closed loop with L", *loop_original);
  }
  return kExitOk;
}

int cmd_generate(const Options& o, std::ostream& out, std::ostream& err) {
  Graph g = Graph::from_polar(1, {});
  if (o.mode == "random") {
    GeneratorConfig cfg;
    cfg.node_count = o.nodes;
    cfg.edge_probability = o.probability;
    if (!o.signatures.empty()) {
      cfg.signature_set = parse_angles(o.signatures);
      for (auto& s : cfg.signature_set) s = wrap_angle(s);
    } else {
      if (o.partites == 0) throw UsageError("--partites must be positive");
      for (std::size_t p = 0; p < o.partites; ++p) {
        cfg.signature_set.push_back(
            wrap_angle(kTwoPi * static_cast<double>(p) / static_cast<double>(o.partites)));
      }
    }
    cfg.modulus_lo = o.modulus_lo;
    cfg.modulus_hi = o.modulus_hi;
    std::size_t attempt = 0;
    while (true) {
      cfg.seed = o.seed + attempt;
      std::optional<GeneratedGraph> gen;
      try {
        gen = random_balanced_graph(cfg);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      if (!o.connected || gen->connected) {
        if (attempt > 0) err << "note: used seed " << cfg.seed << " for a connected graph\n";
        g = std::move(gen->graph);
        break;
      }
      if (++attempt == kMaxConnectedAttempts) {
        throw ConnectivityError("no connected graph within " +
                                std::to_string(kMaxConnectedAttempts) + " seeds");
      }
    }
  } else if (o.mode == "kpartite") {
    try {
      g = k_partite_example(o.sizes).graph;
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else if (o.mode == "cycle") {
    const std::vector<double> args = parse_angles(o.arguments);
    std::vector<double> moduli = o.moduli;
    if (moduli.empty()) moduli.assign(args.size(), 1.0);
    try {
      g = directed_cycle_example(args, moduli);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else {
    const std::vector<double> t = parse_angles(o.thetas);
    if (t.size() != 3) throw UsageError("weakcycle needs --thetas t12,t13,t32");
    g = weak_cycle_example(t[0], t[1], t[2]);
  }
  emit(out, o, serialize_graph(g));
  return kExitOk;
}

int cmd_plotdata(const Options& o, std::ostream& out) {
  static const std::map<std::string, PlotView> views{{"complex", PlotView::kComplex},
                                                     {"real", PlotView::kReal},
                                                     {"imag", PlotView::kImag},
                                                     {"abs", PlotView::kAbs}};
  const TrajectoryTable table = parse_trajectory(read_text_file(o.graph_path));
  emit(out, o, serialize_table(plot_view(table, views.at(o.which))));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Structural balance and consensus on complex-weighted digraphs", "cwg"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json_output, "Machine-readable output");
  app.add_option("--tol", o.tol, "Angle tolerance in radians")->check(CLI::PositiveNumber);
  app.add_option("--config", o.config_path, "JSON file with default option values")
      ->check(CLI::ExistingFile);

  auto* check = app.add_subcommand("check", "Test structural balance");
  auto* zeta = app.add_subcommand("zeta", "Print signatures, zeta and the partition");
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of L, L-hat and closed loops");
  for (auto* sub : {check, zeta, spectrum}) {
    sub->add_option("graph", o.graph_path, "Graph file (.cwg)")->required();
  }
  spectrum->add_option("--model", o.model_path, "LTI agent model (JSON with A, B, K)");

  auto* simulate = app.add_subcommand("simulate", "Run a consensus protocol");
  simulate->add_option("protocol", o.mode, "ct, dt or lti")
      ->required()
      ->check(CLI::IsMember({"ct", "dt", "lti"}));
  simulate->add_option("graph", o.graph_path, "Graph file (.cwg)")->required();
  simulate->add_option("--x0", o.x0_spec, "Initial state file or random:<seed>");
  simulate->add_option("--kappa", o.kappa, "Uniform discrete-time gain")->check(CLI::PositiveNumber);
  simulate->add_option("--steps", o.steps, "Discrete-time steps");
  simulate->add_option("--t-final", o.t_final, "Continuous-time horizon")->check(CLI::PositiveNumber);
  simulate->add_option("--dt", o.dt, "Continuous-time sample spacing")->check(CLI::PositiveNumber);
  simulate->add_option("--scheme", o.scheme, "exact or rk4");
  simulate->add_option("--model", o.model_path, "LTI agent model (JSON with A, B, K)");
  simulate->add_option("--stride", o.stride, "Record every n-th sample")->check(CLI::PositiveNumber);
  simulate->add_option("--window", o.window, "Samples used by the verdict")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--consensus-tol", o.consensus_tol, "Verdict tolerance")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--out", o.out_path, "Trajectory CSV output");

  auto* generate = app.add_subcommand("generate", "Write a generated graph");
  generate->add_option("kind", o.mode, "random, kpartite, cycle or weakcycle")
      ->required()
      ->check(CLI::IsMember({"random", "kpartite", "cycle", "weakcycle"}));
  generate->add_option("--nodes", o.nodes, "random: node count");
  generate->add_option("--p", o.probability, "random: edge probability");
  generate->add_option("--partites", o.partites, "random: evenly spaced signature count");
  generate->add_option("--signatures", o.signatures, "random: explicit signatures")->delimiter(',');
  generate->add_option("--modulus-lo", o.modulus_lo, "random: smallest modulus");
  generate->add_option("--modulus-hi", o.modulus_hi, "random: largest modulus");
  generate->add_option("--seed", o.seed, "random: seed");
  generate->add_flag("--connected", o.connected, "random: resample until connected");
  generate->add_option("--sizes", o.sizes, "kpartite: partite sizes")->delimiter(',');
  generate->add_option("--args", o.arguments, "cycle: edge arguments")->delimiter(',');
  generate->add_option("--moduli", o.moduli, "cycle: edge moduli")->delimiter(',');
  generate->add_option("--thetas", o.thetas, "weakcycle: t12,t13,t32")->delimiter(',');
  generate->add_option("--out", o.out_path, "Graph file output");

  auto* plotdata = app.add_subcommand("plotdata", "Columns for plotting a trajectory");
  plotdata->add_option("trajectory", o.graph_path, "Trajectory CSV")->required();
  plotdata->add_option("--which", o.which, "complex, real, imag or abs")
      ->required()
      ->check(CLI::IsMember({"complex", "real", "imag", "abs"}));
  plotdata->add_option("--out", o.out_path, "Output file");

  for (auto* sub : {check, zeta, spectrum, simulate, generate, plotdata}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitError;
  }

  try {
    json config = json::object();
    if (!o.config_path.empty()) {
      try {
        config = json::parse(read_text_file(o.config_path));
      } catch (const json::parse_error& e) {
        throw UsageError(o.config_path + ": " + e.what());
      }
      if (!config.is_object()) throw UsageError(o.config_path + ": expected a JSON object");
    }
    const CLI::App* active = app.get_subcommands().front();
    const Resolver r(*active, config);
    const double tol = r.get("--tol", "tol", o.tol, env_tolerance());
    if (!(tol > 0.0)) throw UsageError("tolerance must be positive");

    if (check->parsed()) return cmd_check(o, tol, out);
    if (zeta->parsed()) return cmd_zeta(o, tol, out);
    if (simulate->parsed()) return cmd_simulate(o, r, tol, out, err);
    if (spectrum->parsed()) {
      Options so = o;
      so.model_path = r.get<std::string>("--model", "model", o.model_path, "");
      return cmd_spectrum(so, tol, out);
    }
    if (generate->parsed()) return cmd_generate(o, out, err);
    return cmd_plotdata(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace cwg
