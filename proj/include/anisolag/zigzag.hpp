#pragma once

#include <Eigen/Dense>
#include <vector>

#include "anisolag/anisotropy.hpp"

namespace anisolag {

/// One affine piece y -> offset + <gradient, y> on the slab lo <= <direction, y> < hi.
struct AffinePiece {
  double lo = 0.0;
  double hi = 0.0;
  Eigen::VectorXd gradient;
  double offset = 0.0;
  /// 1 or 2: which of the two alternating gradients this piece carries.
  int family = 1;
};

/// Piecewise affine function on a box whose pieces are parallel slabs,
/// i.e. a laminate along a unit direction. Pieces are sorted and contiguous.
class PiecewiseAffineFn {
 public:
  PiecewiseAffineFn(Box domain, Eigen::VectorXd direction, std::vector<AffinePiece> pieces);

  const Box& domain() const { return domain_; }
  const Eigen::VectorXd& direction() const { return direction_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }

  /// Index of the piece whose half-open slab contains y.
  std::size_t piece_index(const Eigen::VectorXd& y) const;

  double operator()(const Eigen::VectorXd& y) const;
  const Eigen::VectorXd& gradient(const Eigen::VectorXd& y) const;

  /// Fraction of a midpoint lattice with `per_axis` points per axis that falls in
  /// pieces of the given family.
  double family_fraction(int family, int per_axis) const;

 private:
  Box domain_;
  Eigen::VectorXd direction_;
  std::vector<AffinePiece> pieces_;
};

/// Zig-zag laminate between gradients xi1 and xi2.
///
/// With xi0 = (xi2 - xi1)/|xi2 - xi1|, the slabs
///   E1_k = {(k-1)/h <= <xi0, y> < (k-1+t)/h},  E2_k = {(k-1+t)/h <= <xi0, y> < k/h}
/// carry u = c1_k + <xi1, y> and u = c2_k + <xi2, y> with
///   c1_k = (1-t)(k-1)|xi2-xi1|/h,  c2_k = -t k |xi2-xi1|/h,
/// which makes u continuous and |u - <t xi1 + (1-t) xi2, y>| <= t(1-t)|xi2-xi1|/h.
/// Only slabs meeting the box are materialized.
PiecewiseAffineFn zigzag_sequence(const Eigen::VectorXd& xi1, const Eigen::VectorXd& xi2, double t, int h,
                                  const Box& box);

/// The bound t(1-t)|xi2 - xi1|/h.
double zigzag_bound(const Eigen::VectorXd& xi1, const Eigen::VectorXd& xi2, double t, int h);

}  // namespace anisolag
