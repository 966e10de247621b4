#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cwg/angle.hpp"
#include "cwg/io.hpp"

namespace cwg {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    tokens.push_back({line.substr(start, pos - start), start + 1});
  }
  return tokens;
}

/// Lines with comments stripped, paired with their 1-based line numbers; blank lines dropped.
std::vector<std::pair<std::size_t, std::vector<Token>>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<Token>>> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    ++number;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = tokenize(line);
    if (!tokens.empty()) lines.emplace_back(number, std::move(tokens));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

double parse_number(const Token& t, std::size_t line) {
  double value = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  if (!t.text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, t.column, "non-numeric field '" + std::string(t.text) + "'");
  }
  return value;
}

std::size_t parse_count(const Token& t, std::size_t line, const char* what) {
  std::size_t value = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, t.column, std::string(what) + " must be a positive integer, got '" +
                                         std::string(t.text) + "'");
  }
  return value;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "missing header 'cwg v1 <N>'");

  const auto& [header_line, header] = lines.front();
  if (header.front().text != "cwg") {
    throw ParseError(header_line, header.front().column, "malformed header: expected 'cwg v1 <N>'");
  }
  if (header.size() < 2) throw ParseError(header_line, 1, "malformed header: missing version");
  if (header[1].text != "v1") {
    throw ParseError(header_line, header[1].column,
                     "unsupported version '" + std::string(header[1].text) + "'");
  }
  if (header.size() != 3) {
    throw ParseError(header_line, header.size() > 3 ? header[3].column : 1,
                     "malformed header: expected 'cwg v1 <N>'");
  }
  const std::size_t n = parse_count(header[2], header_line, "node count");
  if (n == 0) throw ParseError(header_line, header[2].column, "node count must be positive");

  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& [number, tokens] = lines[k];
    if (tokens.size() != 4) {
      throw ParseError(number, tokens.front().column,
                       "edge line needs 4 fields '<j> <i> <modulus> <argument>', got " +
                           std::to_string(tokens.size()));
    }
    const std::size_t j = parse_count(tokens[0], number, "source node");
    const std::size_t i = parse_count(tokens[1], number, "target node");
    for (const auto& [value, token] : {std::pair{j, tokens[0]}, std::pair{i, tokens[1]}}) {
      if (value < 1 || value > n) {
        throw ParseError(number, token.column,
                         "node index " + std::to_string(value) + " outside [1, " +
                             std::to_string(n) + "]");
      }
    }
    edges.push_back({j - 1, i - 1, parse_number(tokens[2], number), parse_number(tokens[3], number)});
    edge_lines.push_back(number);
  }

  try {
    return Graph::from_polar(n, std::move(edges));
  } catch (const GraphError& e) {
    throw ParseError(edge_lines.at(e.position()), 1, e.what());
  }
}

std::string format_double17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_double(double v) {
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string serialize_graph(const Graph& g) {
  std::string out = "cwg v1 " + std::to_string(g.node_count()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.source + 1) + ' ' + std::to_string(e.target + 1) + ' ' +
           format_double17(e.modulus) + ' ' + format_double17(e.argument) + '\n';
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw Error("failed writing '" + path + "'");
}

Graph read_graph_file(const std::string& path) {
  try {
    return parse_graph(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), e.message(), path);
  }
}

Eigen::VectorXcd parse_complex_vector(std::string_view text) {
  std::vector<std::complex<double>> values;
  for (const auto& [number, tokens] : content_lines(text)) {
    if (tokens.size() > 2) {
      throw ParseError(number, tokens[2].column, "expected 're' or 're im' per line");
    }
    const double re = parse_number(tokens[0], number);
    const double im = tokens.size() == 2 ? parse_number(tokens[1], number) : 0.0;
    values.emplace_back(re, im);
  }
  Eigen::VectorXcd x(static_cast<Eigen::Index>(values.size()));
  for (std::size_t k = 0; k < values.size(); ++k) x(static_cast<Eigen::Index>(k)) = values[k];
  return x;
}

double parse_angle(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  auto number = [](std::string_view s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = first + s.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc() || ptr != last) {
      throw std::invalid_argument("not an angle: '" + std::string(s) + "'");
    }
    return v;
  };
  const auto pi_at = text.find("pi");
  if (pi_at == std::string_view::npos) return number(text);

  std::string_view coef = text.substr(0, pi_at);
  std::string_view rest = text.substr(pi_at + 2);
  if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
  double scale = 1.0;
  if (coef == "-") {
    scale = -1.0;
  } else if (!coef.empty() && coef != "+") {
    scale = number(coef);
  }
  double den = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') throw std::invalid_argument("not an angle: '" + std::string(text) + "'");
    den = number(rest.substr(1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in angle");
  }
  if (scale == 1.0 && den == 1.0) return kPi;
  if (scale == -1.0 && den == 1.0) return -kPi;
  return scale * kPi / den;
}

}  // namespace cwg
