#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "anisolag/error.hpp"
#include "anisolag/expr.hpp"

using anisolag::Expr;

namespace {

double eval(const Expr& e, std::vector<double> x, std::vector<double> q = {}) { return e.eval(x, q); }

}  // namespace

TEST(Expr, ParsesArithmeticWithPrecedence) {
  EXPECT_DOUBLE_EQ(eval(Expr::parse("1 + 2*3"), {}), 7.0);
  EXPECT_DOUBLE_EQ(eval(Expr::parse("(1 + 2)*3"), {}), 9.0);
  EXPECT_DOUBLE_EQ(eval(Expr::parse("(2^3)^2"), {}), 64.0);
  EXPECT_THROW(Expr::parse("2^3^1"), anisolag::ParseError);
  EXPECT_DOUBLE_EQ(eval(Expr::parse("-x1^2"), {3.0}), -9.0);
  EXPECT_DOUBLE_EQ(eval(Expr::parse("x1/x2 - 1"), {3.0, 2.0}), 0.5);
}

TEST(Expr, VariablesAreOneBasedInText) {
  const Expr e = Expr::parse("x2 + 10*q1");
  EXPECT_EQ(e.x_arity(), 2);
  EXPECT_EQ(e.q_arity(), 1);
  EXPECT_DOUBLE_EQ(eval(e, {0.0, 4.0}, {0.5}), 9.0);
}

TEST(Expr, Functions) {
  EXPECT_DOUBLE_EQ(eval(Expr::parse("exp(0)"), {}), 1.0);
  EXPECT_DOUBLE_EQ(eval(Expr::parse("abs(-2.5)"), {}), 2.5);
  EXPECT_DOUBLE_EQ(eval(Expr::parse("sqrt(16)"), {}), 4.0);
  EXPECT_DOUBLE_EQ(eval(Expr::parse("min(x1, 2)"), {3.0}), 2.0);
  EXPECT_DOUBLE_EQ(eval(Expr::parse("max(x1, 0)"), {-1.0}), 0.0);
  EXPECT_DOUBLE_EQ(eval(Expr::parse("x1^-2"), {2.0}), 0.25);
  EXPECT_DOUBLE_EQ(eval(Expr::parse("x1^(-2)"), {2.0}), 0.25);
  EXPECT_DOUBLE_EQ(eval(Expr::parse("1.5e1"), {}), 15.0);
}

TEST(Expr, WorkedExampleIntegrands) {
  const Expr f1 = Expr::parse("2*((q1+q2)/2)^2");
  const Expr f2 = Expr::parse("2*((q1+q2)/2)^2 + exp((q1-q2)^2) - 1");
  EXPECT_DOUBLE_EQ(eval(f1, {}, {1.0, 1.0}), 2.0);
  EXPECT_DOUBLE_EQ(eval(f1, {}, {0.0, 0.0}), 0.0);
  EXPECT_NEAR(eval(f2, {}, {1.0, -1.0}), 53.598150033144236, 1e-12);
}

TEST(Expr, StrRoundTrips) {
  for (const char* text : {"x1 + 2*x2^3", "exp(-q1^2) - min(x1, q2)/3", "sqrt(1 + (0.1*q1)^2)", "-(x1 - x2)", "abs(x1)^-1"}) {
    const Expr e = Expr::parse(text);
    const Expr back = Expr::parse(e.str());
    EXPECT_EQ(back.str(), e.str()) << text;
    EXPECT_DOUBLE_EQ(eval(back, {0.3, 0.7}, {1.1, -0.4}), eval(e, {0.3, 0.7}, {1.1, -0.4})) << text;
  }
}

TEST(Expr, SymbolicDerivative) {
  const Expr e = Expr::parse("x1^2*x2 + exp(x2) - x1/x2");
  const std::vector<double> p{1.5, 0.5};
  EXPECT_NEAR(eval(e.derivative_x(0), p), 2 * 1.5 * 0.5 - 1 / 0.5, 1e-14);
  EXPECT_NEAR(eval(e.derivative_x(1), p), 1.5 * 1.5 + std::exp(0.5) + 1.5 / 0.25, 1e-13);
  EXPECT_TRUE(Expr::parse("q1^2 + 3").derivative_x(0).is_constant());
}

TEST(Expr, DerivativeOfAbsOnXThrows) {
  EXPECT_THROW(Expr::parse("abs(x1)").derivative_x(0), anisolag::NonDifferentiableError);
  EXPECT_THROW(Expr::parse("max(x1, 0)").derivative_x(0), anisolag::NonDifferentiableError);
  EXPECT_FALSE(Expr::parse("max(x1, 0)").differentiable_in_x());
  EXPECT_TRUE(Expr::parse("abs(q1) + x1").differentiable_in_x());
}

TEST(Expr, ParseErrors) {
  for (const char* bad : {"", "1 +", "(x1", "x0", "y1", "x1^1.5", "foo(1)", "1 2", "min(1)"})
    EXPECT_THROW(Expr::parse(bad), anisolag::ParseError) << bad;
}

TEST(Expr, EvaluationChecksArity) {
  EXPECT_THROW(eval(Expr::parse("x3"), {1.0, 2.0}), anisolag::DimensionError);
  EXPECT_THROW(eval(Expr::parse("q2"), {}, {1.0}), anisolag::DimensionError);
}

TEST(Expr, SimplifiesTrivialNodes) {
  EXPECT_TRUE((Expr::x(0) * Expr(0.0)).is_constant());
  EXPECT_EQ((Expr::x(0) + Expr(0.0)).str(), Expr::x(0).str());
  EXPECT_EQ((Expr::x(0) * Expr(1.0)).str(), Expr::x(0).str());
  EXPECT_DOUBLE_EQ((Expr(2.0) * Expr(3.0)).constant_value(), 6.0);
}
