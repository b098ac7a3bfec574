#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anisolag/expr.hpp"

namespace anisolag {

/// Axis-aligned box [lo_0,hi_0] x ... x [lo_{n-1},hi_{n-1}] with lo < hi.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  Box() = default;
  Box(std::vector<double> lower, std::vector<double> upper);

  static Box cube(int n, double lower, double upper);

  int dim() const { return static_cast<int>(lo.size()); }
  double width(int axis) const { return hi[static_cast<std::size_t>(axis)] - lo[static_cast<std::size_t>(axis)]; }
  double volume() const;
  Eigen::VectorXd center() const;

  /// Closed-box membership with a relative slack for round-off at the faces.
  bool contains(const Eigen::VectorXd& point, double rel_slack = 1e-12) const;
  bool contains(const Box& inner, double rel_slack = 1e-12) const;
};

/// A family X = (X_1, ..., X_m) of Lipschitz vector fields on a box in R^n,
/// stored as the m x n coefficient matrix of expressions: X_j = sum_i c_{j,i} d/dx_i.
class Anisotropy {
 public:
  struct Options {
    /// Reject m > n.
    bool strict = false;
    /// Points used to confirm every coefficient is finite on the closed box.
    int finiteness_samples = 256;
  };

  Anisotropy(std::vector<std::vector<Expr>> coeffs, Box domain, std::string name = {});
  Anisotropy(std::vector<std::vector<Expr>> coeffs, Box domain, std::string name, const Options& options);

  int n() const { return n_; }
  int m() const { return m_; }
  const Box& domain() const { return domain_; }
  const std::string& name() const { return name_; }
  const Expr& coeff(int j, int i) const { return coeffs_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]; }
  const std::vector<std::vector<Expr>>& coeffs() const { return coeffs_; }

  /// C(x). Throws DomainError when x is outside the closed domain.
  Eigen::MatrixXd coefficient_matrix(const Eigen::VectorXd& x) const;

  /// X u(x) = C(x) * xi for a Euclidean gradient xi.
  Eigen::VectorXd apply_gradient(const Eigen::VectorXd& x, const Eigen::VectorXd& xi) const;

  /// Coefficients of [X_i, X_j] at x (0-based field indices), by symbolic
  /// differentiation of the coefficient expressions.
  Eigen::VectorXd lie_bracket(int i, int j, const Eigen::VectorXd& x) const;

  /// Largest sampled ratio |C(x) - C(y)|_F / |x - y| over random pairs.
  /// A diagnostic estimate, not a certified bound.
  double lipschitz_estimate(int pairs = 10000, std::uint64_t seed = 0) const;

  /// C(x) without the domain check; for callers that already validated x.
  Eigen::MatrixXd coefficient_matrix_unchecked(const Eigen::VectorXd& x) const;

 private:
  void check_point(const Eigen::VectorXd& x) const;

  int n_ = 0;
  int m_ = 0;
  Box domain_;
  std::vector<std::vector<Expr>> coeffs_;
  std::string name_;
};

/// Parameters for the builtin catalog.
struct CatalogParams {
  /// Ambient dimension for "euclidean" (and the default Riemannian frame size).
  int n = 2;
  std::optional<Box> box;
  /// Square frame for "riemannian_frame"; defaults to a shear frame.
  std::optional<std::vector<std::vector<Expr>>> frame;
};

/// Builtins: euclidean, heisenberg, grushin, split_plane, duplicate_row,
/// riemannian_frame. Throws InvalidArgument for unknown names or bad params.
Anisotropy builtin(std::string_view name, const CatalogParams& params = {});

const std::vector<std::string>& builtin_names();

}  // namespace anisolag
