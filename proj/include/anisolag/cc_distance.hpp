#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "anisolag/anisotropy.hpp"
#include "anisolag/grid.hpp"

namespace anisolag {

/// Directed graph over grid cell centers whose edges are horizontal
/// displacements. Edge u -> v exists when v - u lies, up to tau_span |v - u|,
/// in span{X_1, ..., X_m} at the segment midpoint; its weight is the norm of
/// the minimum-norm coefficients a with sum_j a_j X_j(midpoint) = v - u.
class HorizontalGraph {
 public:
  HorizontalGraph(Grid grid, int radius, double tau_span, std::vector<std::size_t> offsets,
                  std::vector<std::size_t> targets, std::vector<double> weights);

  const Grid& grid() const { return grid_; }
  int radius() const { return radius_; }
  double tau_span() const { return tau_span_; }
  std::size_t node_count() const { return grid_.size(); }
  std::size_t edge_count() const { return targets_.size(); }

  /// Edges leaving `node` as index ranges into targets()/weights().
  std::size_t edges_begin(std::size_t node) const { return offsets_[node]; }
  std::size_t edges_end(std::size_t node) const { return offsets_[node + 1]; }
  const std::vector<std::size_t>& targets() const { return targets_; }
  const std::vector<double>& weights() const { return weights_; }

  /// CSV with header "src,dst,weight".
  void write_edge_csv(std::ostream& os) const;

 private:
  Grid grid_;
  int radius_;
  double tau_span_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> targets_;
  std::vector<double> weights_;
};

/// Builds the graph over every cell center, considering all neighbors within
/// Chebyshev radius r (in cells). Throws DomainError if the grid box is not
/// inside the anisotropy domain.
HorizontalGraph build_graph(const Anisotropy& a, const Grid& grid, int radius = 1, double tau_span = 1e-6);

struct DistanceResult {
  bool finite = false;
  /// Only meaningful when finite.
  double distance = 0.0;
  std::size_t from_node = 0;
  std::size_t to_node = 0;
  Eigen::VectorXd snapped_from;
  Eigen::VectorXd snapped_to;
  std::size_t nodes_expanded = 0;
};

/// Dijkstra between the cells containing x and y. Unreachable targets return
/// finite = false.
DistanceResult cc_distance(const HorizontalGraph& g, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Single-source shortest-path weights; unreachable nodes hold +infinity.
std::vector<double> distances_from(const HorizontalGraph& g, std::size_t source);

}  // namespace anisolag
