#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

namespace anisolag {

/// Immutable scalar expression over point coordinates x1..xn and argument
/// components q1..qd.
///
/// Grammar: numeric literals, variables, + - * /, integer powers, exp, abs,
/// sqrt, min, max. Nodes are shared, so copies are cheap and the tree can be
/// evaluated from many threads at once. Variable indices are 0-based in the
/// API and 1-based in the textual form (`x1` is `Expr::x(0)`).
class Expr {
 public:
  enum class Op { Const, VarX, VarQ, Add, Sub, Mul, Div, Neg, Pow, Exp, Abs, Sqrt, Min, Max };

  Expr();  // the constant 0
  Expr(double value);  // NOLINT(google-explicit-constructor): literals read naturally

  static Expr constant(double value);
  static Expr x(int index);
  static Expr q(int index);

  /// Parses the textual form. Throws ParseError with the offending offset.
  static Expr parse(std::string_view text);

  double eval(std::span<const double> x, std::span<const double> q = {}) const;

  /// Symbolic partial derivative with respect to x_index. Throws
  /// NonDifferentiableError if abs/min/max sits on an x-dependent subtree.
  Expr derivative_x(int index) const;

  bool depends_on_x() const;
  bool differentiable_in_x() const;

  /// One past the largest referenced x (resp. q) index; 0 if none.
  int x_arity() const;
  int q_arity() const;

  Op op() const;
  bool is_constant() const;
  double constant_value() const;

  /// Fully parenthesized text that parses back to the same tree.
  std::string str() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& base, int exponent);
  friend Expr exp(const Expr& a);
  friend Expr abs(const Expr& a);
  friend Expr sqrt(const Expr& a);
  friend Expr min(const Expr& a, const Expr& b);
  friend Expr max(const Expr& a, const Expr& b);

  struct Node;  // implementation detail

 private:
  explicit Expr(std::shared_ptr<const Node> node);
  static Expr make(Op op, const Expr& a, const Expr& b = Expr(), int exponent = 0);

  std::shared_ptr<const Node> node_;
};

}  // namespace anisolag
