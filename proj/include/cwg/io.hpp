#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "cwg/consensus.hpp"
#include "cwg/graph.hpp"

namespace cwg {

// Graph files (.cwg):
//
//   # comment
//   cwg v1 <N>
//   <j> <i> <modulus> <argument-in-radians>
//
// Nodes are 1-based; an edge line j i describes the edge j -> i.

/// Throws ParseError with the line and column of the first problem.
Graph parse_graph(std::string_view text);

/// Canonical form: edges sorted by (j, i), 17 significant digits.
std::string serialize_graph(const Graph& g);

Graph read_graph_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);
std::string read_text_file(const std::string& path);

// Trajectory files (.csv): header t,re_x1,im_x1,...; LTI runs name columns re_x<i>_<c>.

std::string serialize_trajectory(const Trajectory& traj);

/// Parsed trajectory CSV: column names plus rows of numbers.
struct TrajectoryTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

TrajectoryTable parse_trajectory(std::string_view text);

enum class PlotView { kComplex, kReal, kImag, kAbs };

/// Reduces a trajectory table to one of the four plotting views. Real, imag and abs
/// produce one column per state entry; complex keeps the re/im pairs.
TrajectoryTable plot_view(const TrajectoryTable& table, PlotView view);

std::string serialize_table(const TrajectoryTable& table);

/// Complex vector from text: one entry per line as "re" or "re im", # comments allowed.
Eigen::VectorXcd parse_complex_vector(std::string_view text);

/// Shortest decimal form that reads back as the same double.
std::string format_double(double v);

/// Fixed 17-significant-digit form used by the graph file.
std::string format_double17(double v);

/// Angle literal: a plain number, or a multiple of pi such as "pi", "-pi/2", "2pi/3",
/// "0.5*pi". Throws std::invalid_argument.
double parse_angle(std::string_view text);

}  // namespace cwg
