#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netabs/errors.hpp"

namespace netabs {

// Undirected weighted link {i, j} with i < j and w > 0.
struct Edge {
  int i = 0;
  int j = 0;
  double w = 1.0;
};

// Immutable weighted simple graph on nodes 0..n-1.  Construction normalizes
// endpoint order, validates (no self-loops, no duplicates, positive finite
// weights) and sorts edges by (i, j); all iteration downstream relies on
// that canonical order.
class WeightedGraph {
 public:
  WeightedGraph(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  Eigen::MatrixXd laplacian() const;
  Eigen::MatrixXd adjacency() const;
  Eigen::VectorXd degrees() const;  // weighted degrees

  bool is_connected() const;  // structural (BFS over links)
  double total_weight() const;
  int sparsity_l0() const;   // nonzero off-diagonal count = 2m
  int sparsity_s01() const;  // max structural node degree

  // Same topology with every weight multiplied by kappa > 0.
  WeightedGraph scaled(double kappa) const;

 private:
  int n_;
  std::vector<Edge> edges_;
};

// Couplings-matrix round trip.  The matrix must be symmetric with zero
// diagonal and nonnegative entries; zeros mean "no link".
WeightedGraph from_gain_matrix(const Eigen::MatrixXd& K);
Eigen::MatrixXd gain_matrix(const WeightedGraph& g);

// Generators.  All randomized generators consume a deterministic stream
// seeded by `seed`; equal inputs give equal graphs on every platform.
WeightedGraph complete_graph(int n, double w = 1.0);
WeightedGraph path_graph(int n, double w = 1.0);
WeightedGraph cycle_graph(int n, double w = 1.0);
WeightedGraph star_graph(int n, double w = 1.0);
// Uniform random simple graph with exactly m links, unit weights.
WeightedGraph gnm_random(int n, int m, std::uint64_t seed);
// Two G(half, links) blocks joined by one random cross link (unit weights).
WeightedGraph two_component_cut(int half, int links, std::uint64_t seed);
// Complete graph with w(i,j) = c * exp(-gamma * |i - j|).
WeightedGraph exp_decay(int n, double c, double gamma);
// n points uniform in [0, side]^2; unit-weight link when distance <= radius.
WeightedGraph proximity(int n, double side, double radius, std::uint64_t seed);

// Edge-list text format: optional header line "n <count>", then one link
// per line "i<TAB>j<TAB>w".  Parser accepts any blank separation, '#'
// comments, and an omitted weight (defaults to 1).  Writer emits the header,
// canonical (i, j) order, TAB separation, and 17 significant digits so that
// values round-trip exactly.
WeightedGraph parse_edge_list(const std::string& text);
WeightedGraph read_edge_list(const std::string& path);
std::string format_edge_list(const WeightedGraph& g);
void write_edge_list(const WeightedGraph& g, const std::string& path);

}  // namespace netabs
