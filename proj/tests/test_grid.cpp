#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "anisolag/anisotropy.hpp"
#include "anisolag/error.hpp"
#include "anisolag/grid.hpp"
#include "anisolag/lagrangian.hpp"

using namespace anisolag;

namespace {

double max_component_error(const GridFunction& g, const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& exact) {
  double worst = 0.0;
  for (std::size_t c = 0; c < g.grid.size(); ++c) worst = std::max(worst, (g.vector_at(c) - exact(g.grid.center(c))).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace

TEST(Grid, Layout) {
  const Grid g(Box({0.0, -1.0}, {1.0, 1.0}), {4, 5});
  EXPECT_EQ(g.size(), 20u);
  EXPECT_DOUBLE_EQ(g.spacing(0), 0.25);
  EXPECT_DOUBLE_EQ(g.spacing(1), 0.4);
  EXPECT_DOUBLE_EQ(g.cell_volume(), 0.1);
  EXPECT_EQ(g.flatten({1, 2}), 7u);
  EXPECT_EQ(g.unflatten(7), (std::vector<int>{1, 2}));
  EXPECT_DOUBLE_EQ(g.center_coordinate(0, 0), 0.125);
  EXPECT_DOUBLE_EQ(g.center_coordinate(1, 4), 0.8);
  EXPECT_EQ(g.cell_of(Eigen::Vector2d(0.25, -1.0)), g.flatten({1, 0}));
  EXPECT_EQ(g.cell_of(Eigen::Vector2d(1.0, 1.0)), g.flatten({3, 4}));
  EXPECT_THROW(g.cell_of(Eigen::Vector2d(1.5, 0.0)), DomainError);
  EXPECT_THROW(Grid(Box::cube(2, 0, 1), {1, 4}), InvalidArgument);
  EXPECT_THROW(Grid(Box::cube(2, 0, 1), {4}), DimensionError);
}

TEST(Gradient, AffineExactEverywhere) {
  const Grid g = Grid::uniform(Box::cube(2, 0.0, 1.0), 7);
  const GridFunction u = GridFunction::sample(g, Expr::parse("3*x1 - 2*x2 + 1"));
  const GridFunction du = euclidean_gradient(u);
  EXPECT_LE(max_component_error(du, [](const Eigen::VectorXd&) { return Eigen::Vector2d(3.0, -2.0); }), 1e-10);
  const GridFunction coarse = euclidean_gradient(GridFunction::sample(Grid::uniform(Box::cube(2, 0.0, 1.0), 2), Expr::x(0)));
  EXPECT_LE(max_component_error(coarse, [](const Eigen::VectorXd&) { return Eigen::Vector2d(1.0, 0.0); }), 1e-12);
}

TEST(Gradient, QuadraticExactWithSecondOrderStencils) {
  const Grid g = Grid::uniform(Box::cube(1, 0.0, 1.0), 8);
  const GridFunction du = euclidean_gradient(GridFunction::sample(g, Expr::parse("x1^2")));
  EXPECT_LE(max_component_error(du, [](const Eigen::VectorXd& x) { return Eigen::VectorXd::Constant(1, 2 * x[0]); }), 1e-12);
}

TEST(XGradient, Examples) {
  const Anisotropy e = builtin("euclidean");
  const GridFunction xe = x_gradient(GridFunction::sample(Grid::uniform(e.domain(), 10), Expr::x(0)), e);
  EXPECT_LE(max_component_error(xe, [](const Eigen::VectorXd&) { return Eigen::Vector2d(1.0, 0.0); }), 1e-12);

  const Anisotropy h = builtin("heisenberg");
  const GridFunction xh = x_gradient(GridFunction::sample(Grid::uniform(h.domain(), 6), Expr::x(2)), h);
  EXPECT_LE(max_component_error(xh, [](const Eigen::VectorXd& x) { return Eigen::Vector2d(x[1], -x[0]); }), 1e-10);

  const Anisotropy gr = builtin("grushin");
  const GridFunction xg = x_gradient(GridFunction::sample(Grid::uniform(gr.domain(), 8), Expr::x(1)), gr);
  EXPECT_LE(max_component_error(xg, [](const Eigen::VectorXd& x) { return Eigen::Vector2d(0.0, x[0]); }), 1e-12);

  const Grid outside = Grid::uniform(Box::cube(2, 0.0, 2.0), 4);
  EXPECT_THROW(x_gradient(GridFunction::sample(outside, Expr::x(0)), e), DomainError);
}

TEST(Functional, HeisenbergDirichletEnergy) {
  const Anisotropy h = builtin("heisenberg");
  const Lagrangian f = Lagrangian::for_anisotropy(LagrangianKind::anisotropic, "q1^2 + q2^2", h);
  for (int n : {8, 32, 64}) {
    const Grid g = Grid::uniform(h.domain(), n);
    const double v = functional_eval(f, GridFunction::sample(g, Expr::x(2)), h, g.box());
    // Midpoint rule for x1^2 + x2^2: 2 (1/3 - 1/(12 N^2)).
    EXPECT_NEAR(v, 2.0 * (1.0 / 3.0 - 1.0 / (12.0 * n * n)), 1e-12) << n;
  }
}

TEST(Functional, ConstantIntegrands) {
  const Anisotropy e = builtin("euclidean");
  const Grid ge = Grid::uniform(e.domain(), 9);
  const Lagrangian fe = Lagrangian::for_anisotropy(LagrangianKind::anisotropic, "q1^2 + q2^2", e);
  EXPECT_NEAR(functional_eval(fe, GridFunction::sample(ge, Expr::x(0)), e, ge.box()), 1.0, 1e-9);

  const Anisotropy d = builtin("duplicate_row");
  const Grid gd = Grid::uniform(d.domain(), 9);
  const Lagrangian f1 = Lagrangian::for_anisotropy(LagrangianKind::anisotropic, "2*((q1+q2)/2)^2", d);
  EXPECT_NEAR(functional_eval(f1, GridFunction::sample(gd, Expr::x(0)), d, gd.box()), 2.0, 1e-9);
}

TEST(Functional, RegionMonotoneAndChecked) {
  const Anisotropy h = builtin("heisenberg");
  const Lagrangian f = Lagrangian::for_anisotropy(LagrangianKind::anisotropic, "q1^2 + q2^2", h);
  const Grid g = Grid::uniform(h.domain(), 10);
  const GridFunction u = GridFunction::sample(g, Expr::parse("x3 + x1*x2"));
  const double small = functional_eval(f, u, h, Box({0.0, 0.0, 0.0}, {0.5, 0.5, 1.0}));
  const double mid = functional_eval(f, u, h, Box({0.0, 0.0, 0.0}, {0.7, 0.5, 1.0}));
  const double all = functional_eval(f, u, h, g.box());
  EXPECT_LE(small, mid);
  EXPECT_LE(mid, all);
  EXPECT_THROW(functional_eval(f, u, h, Box::cube(3, 0.0, 2.0)), DomainError);
}

TEST(Functional, RepresentationIdentityOnGrid) {
  const Anisotropy h = builtin("heisenberg");
  const Lagrangian raw = Lagrangian::for_anisotropy(LagrangianKind::euclidean, "(1 + x1^2)*(q1 - 2*q3)^2 + sqrt(1 + q2^2)", h);
  const Lagrangian fe = project_to_row_space(raw, h);
  const Lagrangian f = lift(fe, h);
  const Grid g = Grid::uniform(h.domain(), 8);
  const GridFunction u = GridFunction::sample(g, Expr::parse("x1*x3 + x2^2 - x3"));
  const double aniso = functional_eval(f, u, h, g.box());
  const double eucl = euclidean_functional_eval(fe, u, g.box());
  EXPECT_NEAR(aniso, eucl, 1e-9 * std::fabs(eucl));
}

TEST(SobolevNorm, Examples) {
  const Anisotropy e = builtin("euclidean");
  const Grid ge = Grid::uniform(e.domain(), 64);
  EXPECT_DOUBLE_EQ(sobolev_norm(GridFunction::sample(ge, Expr(0.0)), e, 2.0), 0.0);
  EXPECT_NEAR(sobolev_norm(GridFunction::sample(ge, Expr::x(0)), e, 2.0), 1.0 / std::sqrt(3.0) + 1.0, 0.01 * 1.5774);
  const Anisotropy h = builtin("heisenberg");
  const Grid gh = Grid::uniform(h.domain(), 32);
  EXPECT_NEAR(sobolev_norm(GridFunction::sample(gh, Expr::x(2)), h, 2.0), 1.0 / std::sqrt(3.0) + std::sqrt(2.0 / 3.0),
              0.01 * 1.3938);
  EXPECT_THROW(sobolev_norm(GridFunction::sample(ge, Expr::x(0)), e, 0.5), InvalidArgument);
}

TEST(AffineFit, HeisenbergCounterexample) {
  for (int n : {8, 32}) {
    const Grid g = Grid::uniform(Box::cube(3, 0.0, 1.0), n);
    const AffineFit fit = best_affine_fit(GridFunction::sample(g, Expr::x(2)), {Expr::x(0), Expr::x(1), Expr(1.0)});
    EXPECT_NEAR(fit.coeffs[0], 0.0, 1e-12);
    EXPECT_NEAR(fit.coeffs[1], 0.0, 1e-12);
    EXPECT_NEAR(fit.coeffs[2], 0.5, 1e-12);
    // Discrete variance of the midpoints: (1/12)(1 - 1/N^2).
    EXPECT_NEAR(fit.residual, std::sqrt((1.0 - 1.0 / (n * n)) / 12.0), 1e-12);
    EXPECT_NEAR(fit.residual, 1.0 / std::sqrt(12.0), 0.01 / std::sqrt(12.0));
  }
}

TEST(AffineFit, ExactFitsAndDeficiency) {
  const Grid g = Grid::uniform(Box::cube(3, 0.0, 1.0), 6);
  const std::vector<Expr> basis{Expr::x(0), Expr::x(1), Expr(1.0)};
  const AffineFit one = best_affine_fit(GridFunction::sample(g, Expr::x(0)), basis);
  EXPECT_LE(one.residual, 1e-10);
  EXPECT_NEAR(one.coeffs[0], 1.0, 1e-10);
  const AffineFit three = best_affine_fit(GridFunction::sample(g, Expr::parse("x1 + 2*x2 + 3")), basis);
  EXPECT_LE(three.residual, 1e-10);
  EXPECT_NEAR(three.coeffs[1], 2.0, 1e-10);
  EXPECT_NEAR(three.coeffs[2], 3.0, 1e-10);
  const AffineFit dup = best_affine_fit(GridFunction::sample(g, Expr::x(0)), {Expr::x(0), Expr::x(0)});
  EXPECT_EQ(dup.deficiency, 1);
  EXPECT_NEAR(dup.coeffs[0], 0.5, 1e-10);
  EXPECT_NEAR(dup.coeffs[1], 0.5, 1e-10);
  EXPECT_THROW(best_affine_fit(GridFunction::sample(g, Expr::x(0)), basis, 1.0), InvalidArgument);
}

TEST(GridFunction, CsvAndMetadata) {
  const Grid g = Grid::uniform(Box::cube(2, 0.0, 1.0), 2);
  std::ostringstream os;
  write_csv(os, GridFunction::sample(g, Expr::parse("x1 + 10*x2")));
  EXPECT_EQ(os.str(), "i1,i2,x1,x2,v1\n0,0,0.25,0.25,2.75\n0,1,0.25,0.75,7.75\n1,0,0.75,0.25,3.25\n1,1,0.75,0.75,8.25\n");
  EXPECT_EQ(metadata_json(g).dump(), R"({"box":[[0.0,1.0],[0.0,1.0]],"resolution":[2,2]})");
  EXPECT_THROW(GridFunction(g, 1, {1.0}), DimensionError);
  EXPECT_THROW(GridFunction::sample(g, Expr::q(0)), InvalidArgument);
}
