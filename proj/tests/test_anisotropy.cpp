#include <gtest/gtest.h>

#include "anisolag/anisotropy.hpp"
#include "anisolag/error.hpp"

using namespace anisolag;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) out[k++] = x;
  return out;
}

}  // namespace

TEST(Catalog, EuclideanIsIdentity) {
  const Anisotropy a = builtin("euclidean", {.n = 3});
  EXPECT_EQ(a.n(), 3);
  EXPECT_EQ(a.m(), 3);
  EXPECT_TRUE(a.coefficient_matrix(vec({0.2, 0.4, 0.6})).isIdentity(0.0));
}

TEST(Catalog, HeisenbergMatrix) {
  const Anisotropy a = builtin("heisenberg");
  Eigen::MatrixXd expected(2, 3);
  expected << 1, 0, 0.5, 0, 1, -0.25;
  EXPECT_TRUE(a.coefficient_matrix(vec({0.25, 0.5, 0.9})).isApprox(expected, 0.0));
}

TEST(Catalog, GrushinAndSplitPlane) {
  const Anisotropy g = builtin("grushin");
  EXPECT_DOUBLE_EQ(g.coefficient_matrix(vec({-0.5, 0.1}))(1, 1), -0.5);
  const Anisotropy s = builtin("split_plane");
  EXPECT_DOUBLE_EQ(s.coefficient_matrix(vec({-0.5, 0.1}))(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(s.coefficient_matrix(vec({0.5, 0.1}))(1, 1), 0.5);
  EXPECT_DOUBLE_EQ(s.coefficient_matrix(vec({0.0, 0.1}))(1, 1), 0.0);
}

TEST(Catalog, DuplicateRow) {
  const Anisotropy a = builtin("duplicate_row");
  Eigen::MatrixXd expected(2, 2);
  expected << 1, 0, 1, 0;
  EXPECT_EQ(a.coefficient_matrix(vec({0.3, 0.3})), expected);
}

TEST(Catalog, RiemannianFrame) {
  const Anisotropy a = builtin("riemannian_frame");
  EXPECT_EQ(a.m(), a.n());
  EXPECT_NEAR(a.coefficient_matrix(vec({0.3, 0.8})).determinant(), 1.0, 1e-15);
  CatalogParams singular;
  singular.frame = std::vector<std::vector<Expr>>{{Expr(1.0), Expr(0.0)}, {Expr(2.0), Expr(0.0)}};
  EXPECT_THROW(builtin("riemannian_frame", singular), InvalidArgument);
  CatalogParams rectangular;
  rectangular.frame = std::vector<std::vector<Expr>>{{Expr(1.0), Expr(0.0)}};
  EXPECT_THROW(builtin("riemannian_frame", rectangular), InvalidArgument);
}

TEST(Catalog, Errors) {
  EXPECT_THROW(builtin("nope"), InvalidArgument);
  EXPECT_THROW(builtin("euclidean", {.n = 0}), InvalidArgument);
  CatalogParams wrong_box;
  wrong_box.box = Box::cube(3, 0.0, 1.0);
  EXPECT_THROW(builtin("grushin", wrong_box), InvalidArgument);
  EXPECT_EQ(builtin_names().size(), 6u);
}

TEST(Anisotropy, DomainAndDimensionChecks) {
  const Anisotropy a = builtin("heisenberg");
  EXPECT_THROW(a.coefficient_matrix(vec({0.5, 0.5})), DimensionError);
  EXPECT_THROW(a.coefficient_matrix(vec({1.5, 0.5, 0.5})), DomainError);
  EXPECT_NO_THROW(a.coefficient_matrix(vec({1.0, 0.0, 1.0})));
}

TEST(Anisotropy, RejectsBadCoefficients) {
  const Box unit = Box::cube(2, 0.0, 1.0);
  EXPECT_THROW(Anisotropy({{Expr(1.0)}}, unit, "short"), DimensionError);
  EXPECT_THROW(Anisotropy({{Expr::q(0), Expr(0.0)}}, unit, "q"), InvalidArgument);
  EXPECT_THROW(Anisotropy({{Expr::x(2), Expr(0.0)}}, unit, "x3"), DimensionError);
  EXPECT_THROW(Anisotropy({{Expr(1.0) / Expr::x(0), Expr(0.0)}}, unit, "pole"), NonFiniteError);
  Anisotropy::Options strict;
  strict.strict = true;
  EXPECT_THROW(Anisotropy({{Expr(1.0)}, {Expr(2.0)}}, Box::cube(1, 0.0, 1.0), "tall", strict), InvalidArgument);
  EXPECT_NO_THROW(Anisotropy({{Expr(1.0)}, {Expr(2.0)}}, Box::cube(1, 0.0, 1.0), "tall"));
}

TEST(Anisotropy, ApplyGradient) {
  const Anisotropy a = builtin("heisenberg");
  const Eigen::VectorXd xu = a.apply_gradient(vec({0.2, 0.4, 0.6}), vec({0.0, 0.0, 1.0}));
  EXPECT_DOUBLE_EQ(xu[0], 0.4);
  EXPECT_DOUBLE_EQ(xu[1], -0.2);
}

TEST(Anisotropy, LieBrackets) {
  const Anisotropy h = builtin("heisenberg");
  const Eigen::VectorXd b = h.lie_bracket(0, 1, vec({0.3, 0.7, 0.1}));
  EXPECT_NEAR((b - vec({0.0, 0.0, -2.0})).norm(), 0.0, 1e-15);
  const Eigen::VectorXd g = builtin("grushin").lie_bracket(0, 1, vec({0.3, 0.7}));
  EXPECT_NEAR((g - vec({0.0, 1.0})).norm(), 0.0, 1e-15);
  EXPECT_TRUE(builtin("euclidean").lie_bracket(0, 1, vec({0.5, 0.5})).isZero(0.0));
  EXPECT_THROW(builtin("split_plane").lie_bracket(0, 1, vec({0.5, 0.5})), NonDifferentiableError);
  EXPECT_THROW(h.lie_bracket(0, 2, vec({0.3, 0.7, 0.1})), InvalidArgument);
}

TEST(Anisotropy, LipschitzEstimate) {
  EXPECT_DOUBLE_EQ(builtin("euclidean").lipschitz_estimate(100, 1), 0.0);
  const double l = builtin("heisenberg").lipschitz_estimate(500, 1);
  EXPECT_GT(l, 0.5);
  EXPECT_LE(l, 1.0 + 1e-12);
}

TEST(Box, Basics) {
  const Box b({0.0, -1.0}, {2.0, 1.0});
  EXPECT_DOUBLE_EQ(b.volume(), 4.0);
  EXPECT_TRUE(b.contains(vec({2.0, 1.0})));
  EXPECT_FALSE(b.contains(vec({2.1, 0.0})));
  EXPECT_TRUE(b.contains(Box({0.5, 0.0}, {1.0, 1.0})));
  EXPECT_THROW(Box({1.0}, {0.0}), InvalidArgument);
  EXPECT_THROW(Box({0.0, 0.0}, {1.0}), DimensionError);
}
