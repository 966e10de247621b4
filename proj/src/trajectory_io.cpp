#include <charconv>
#include <cmath>

#include "cwg/errors.hpp"
#include "cwg/io.hpp"

namespace cwg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    fields.push_back(trim(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return fields;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += ',';
    out += parts[k];
  }
  return out;
}

}  // namespace

std::string serialize_trajectory(const Trajectory& traj) {
  const std::size_t block = traj.metadata.block_size;
  const std::size_t dim = traj.states.empty() ? 0 : static_cast<std::size_t>(traj.states[0].size());
  std::vector<std::string> header{"t"};
  for (std::size_t k = 0; k < dim; ++k) {
    std::string name = "x" + std::to_string(k / block + 1);
    if (block > 1) name += "_" + std::to_string(k % block + 1);
    header.push_back("re_" + name);
    header.push_back("im_" + name);
  }
  std::string out = join(header) + '\n';
  for (std::size_t s = 0; s < traj.size(); ++s) {
    out += format_double(traj.times[s]);
    for (const auto& v : traj.states[s]) {
      out += ',' + format_double(v.real()) + ',' + format_double(v.imag());
    }
    out += '\n';
  }
  return out;
}

TrajectoryTable parse_trajectory(std::string_view text) {
  TrajectoryTable table;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++number;
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    if (table.columns.empty()) {
      for (const auto f : fields) table.columns.emplace_back(f);
      if (table.columns.front() != "t") throw ParseError(number, 1, "first column must be 't'");
      continue;
    }
    if (fields.size() != table.columns.size()) {
      throw ParseError(number, 1, "expected " + std::to_string(table.columns.size()) +
                                      " fields, got " + std::to_string(fields.size()));
    }
    std::vector<double> row;
    for (std::size_t k = 0; k < fields.size(); ++k) {
      double v = 0.0;
      const char* first = fields[k].data();
      const char* last = first + fields[k].size();
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (fields[k].empty() || ec != std::errc() || ptr != last) {
        throw ParseError(number, k + 1, "non-numeric field '" + std::string(fields[k]) + "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.columns.empty()) throw ParseError(1, 1, "empty trajectory file");
  return table;
}

TrajectoryTable plot_view(const TrajectoryTable& table, PlotView view) {
  // (name, re column, im column) per state entry.
  struct Entry {
    std::string name;
    std::size_t re;
    std::size_t im;
  };
  std::vector<Entry> entries;
  for (std::size_t k = 1; k < table.columns.size(); ++k) {
    const std::string& c = table.columns[k];
    if (c.rfind("re_", 0) != 0) continue;
    const std::string name = c.substr(3);
    std::size_t im = table.columns.size();
    for (std::size_t m = 1; m < table.columns.size(); ++m) {
      if (table.columns[m] == "im_" + name) im = m;
    }
    if (im == table.columns.size()) throw ParseError(1, k + 1, "column '" + c + "' has no imaginary pair");
    entries.push_back({name, k, im});
  }

  TrajectoryTable out;
  out.columns.push_back("t");
  for (const auto& e : entries) {
    switch (view) {
      case PlotView::kComplex:
        out.columns.push_back("re_" + e.name);
        out.columns.push_back("im_" + e.name);
        break;
      case PlotView::kReal: out.columns.push_back("re_" + e.name); break;
      case PlotView::kImag: out.columns.push_back("im_" + e.name); break;
      case PlotView::kAbs: out.columns.push_back("abs_" + e.name); break;
    }
  }
  for (const auto& row : table.rows) {
    std::vector<double> r{row[0]};
    for (const auto& e : entries) {
      switch (view) {
        case PlotView::kComplex:
          r.push_back(row[e.re]);
          r.push_back(row[e.im]);
          break;
        case PlotView::kReal: r.push_back(row[e.re]); break;
        case PlotView::kImag: r.push_back(row[e.im]); break;
        case PlotView::kAbs: r.push_back(std::hypot(row[e.re], row[e.im])); break;
      }
    }
    out.rows.push_back(std::move(r));
  }
  return out;
}

std::string serialize_table(const TrajectoryTable& table) {
  std::string out = join(table.columns) + '\n';
  for (const auto& row : table.rows) {
    std::vector<std::string> parts;
    for (double v : row) parts.push_back(format_double(v));
    out += join(parts) + '\n';
  }
  return out;
}

}  // namespace cwg
