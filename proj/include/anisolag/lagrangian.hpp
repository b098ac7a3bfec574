#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "anisolag/anisotropy.hpp"
#include "anisolag/expr.hpp"

namespace anisolag {

enum class LagrangianKind {
  euclidean,    // argument xi in R^n
  anisotropic,  // argument eta in R^m
};

std::string to_string(LagrangianKind kind);
LagrangianKind parse_kind(std::string_view text);

/// A nonnegative integrand (x, arg) -> value.
///
/// Either an expression over x1..xn and q1..qd, or a composition with an
/// anisotropy: lift (eta -> f_e(x, C_P(x) eta)), pushforward
/// (xi -> f(x, C(x) xi)) or projection (xi -> f_e(x, Pi_x xi)). Compositions
/// recompute the pointwise linear algebra on every evaluation because the
/// rank of C(x) may change across the domain.
class Lagrangian {
 public:
  /// x_dim is the ambient dimension n; body may only reference x1..x_{x_dim}
  /// and q1..q_{arg_dim}.
  static Lagrangian from_expr(LagrangianKind kind, Expr body, int arg_dim, int x_dim);
  static Lagrangian parse(LagrangianKind kind, std::string_view text, int arg_dim, int x_dim);

  /// The natural dimensions for `a`: arg_dim = n (euclidean) or m (anisotropic).
  static Lagrangian for_anisotropy(LagrangianKind kind, std::string_view text, const Anisotropy& a);

  LagrangianKind kind() const;
  int arg_dim() const;
  int x_dim() const;
  std::string describe() const;

  /// Dimension-checked raw evaluation.
  double operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& arg) const;

  struct Impl;

 private:
  explicit Lagrangian(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;

  friend Lagrangian lift(const Lagrangian&, const Anisotropy&);
  friend Lagrangian pushforward(const Lagrangian&, const Anisotropy&);
  friend Lagrangian project_to_row_space(const Lagrangian&, const Anisotropy&);
};

struct LagrangianValue {
  double value = 0.0;
  /// value < -1e-12: the body is not nonnegative at this point.
  bool negative = false;
};

/// Evaluates f at (x, arg). Throws DimensionError on mismatched sizes and
/// NonFiniteError for NaN/inf results.
LagrangianValue eval_lagrangian(const Lagrangian& f, const Eigen::VectorXd& x, const Eigen::VectorXd& arg);

/// f(x, eta) = f_e(x, C_P(x) eta). Requires a euclidean f_e with arg_dim = n.
Lagrangian lift(const Lagrangian& f_e, const Anisotropy& a);

/// f_e(x, xi) = f(x, C(x) xi). Requires an anisotropic f with arg_dim = m.
Lagrangian pushforward(const Lagrangian& f, const Anisotropy& a);

/// g(x, xi) = f_e(x, Pi_x xi): the kernel-constant version of a euclidean Lagrangian.
Lagrangian project_to_row_space(const Lagrangian& f_e, const Anisotropy& a);

}  // namespace anisolag
