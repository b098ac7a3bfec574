#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <json.hpp>
#include <vector>

#include "anisolag/anisotropy.hpp"
#include "anisolag/expr.hpp"
#include "anisolag/lagrangian.hpp"

namespace anisolag {

/// Uniform cell-centered grid over a box. Flat indices put the last axis fastest.
class Grid {
 public:
  Grid(Box box, std::vector<int> resolution);
  static Grid uniform(const Box& box, int cells_per_axis);

  const Box& box() const { return box_; }
  int dim() const { return box_.dim(); }
  const std::vector<int>& resolution() const { return resolution_; }
  double spacing(int axis) const { return box_.width(axis) / resolution_[static_cast<std::size_t>(axis)]; }
  double cell_volume() const;
  std::size_t size() const { return size_; }

  std::vector<int> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::vector<int>& index) const;
  std::size_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }

  /// Cell-center coordinate lo + width (2i + 1) / (2N) along one axis.
  double center_coordinate(int axis, int i) const;
  Eigen::VectorXd center(std::size_t flat) const;

  /// Cell containing the point (faces belong to the upper cell, clamped at the box).
  std::size_t cell_of(const Eigen::VectorXd& point) const;

 private:
  Box box_;
  std::vector<int> resolution_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

/// Scalar (width 1) or vector samples at cell centers; component c of cell k
/// is values[k * width + c].
struct GridFunction {
  Grid grid;
  int width = 1;
  std::vector<double> values;

  GridFunction(Grid g, int w, std::vector<double> v);

  /// Samples an expression in x1..xn at every cell center.
  static GridFunction sample(const Grid& grid, const Expr& u);

  double at(std::size_t cell, int component = 0) const {
    return values[cell * static_cast<std::size_t>(width) + static_cast<std::size_t>(component)];
  }
  Eigen::VectorXd vector_at(std::size_t cell) const;
};

/// Euclidean gradient Du: central differences inside, one-sided second-order
/// stencils at the first and last cell of each axis (first-order for N = 2).
GridFunction euclidean_gradient(const GridFunction& u);

/// Xu = C(x) Du at every cell center. Throws DomainError if the grid box is not
/// inside the anisotropy domain.
GridFunction x_gradient(const GridFunction& u, const Anisotropy& a);

/// Midpoint rule for F(u, A) = int_A f(x, Xu) dx over cells whose centers lie
/// in `region`. Summation order is fixed.
double functional_eval(const Lagrangian& f, const GridFunction& u, const Anisotropy& a, const Box& region);

/// Midpoint rule for int_A f_e(x, Du) dx (the euclidean side).
double euclidean_functional_eval(const Lagrangian& f_e, const GridFunction& u, const Box& region);

/// ||u||_{L^p} + ||Xu||_{L^p}, with |Xu| the Euclidean norm of the m-vector.
double sobolev_norm(const GridFunction& u, const Anisotropy& a, double p);

struct AffineFit {
  Eigen::VectorXd coeffs;
  double residual = 0.0;
  int rank = 0;
  /// basis size minus rank; coefficients are minimum-norm when positive.
  int deficiency = 0;
};

/// Discrete L^2 projection of u onto span(basis) through the normal equations.
AffineFit best_affine_fit(const GridFunction& u, const std::vector<Expr>& basis, double p = 2.0);

/// One row per cell: index tuple, center coordinates, value(s).
void write_csv(std::ostream& os, const GridFunction& u);
nlohmann::ordered_json metadata_json(const Grid& grid);

}  // namespace anisolag
