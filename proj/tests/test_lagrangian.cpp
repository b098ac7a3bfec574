#include <gtest/gtest.h>

#include <cmath>

#include "anisolag/anisotropy.hpp"
#include "anisolag/error.hpp"
#include "anisolag/lagrangian.hpp"
#include "anisolag/property_checks.hpp"

using namespace anisolag;

namespace {

const char* kF1 = "2*((q1+q2)/2)^2";
const char* kF2 = "2*((q1+q2)/2)^2 + exp((q1-q2)^2) - 1";

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) out[k++] = x;
  return out;
}

SamplingOptions small(std::uint64_t seed = 0) {
  SamplingOptions o;
  o.x_samples = 20;
  o.arg_samples = 100;
  o.seed = seed;
  return o;
}

}  // namespace

TEST(Lagrangian, EvaluatesWorkedExample) {
  const Anisotropy a = builtin("duplicate_row");
  const Lagrangian f1 = Lagrangian::for_anisotropy(LagrangianKind::anisotropic, kF1, a);
  const Lagrangian f2 = Lagrangian::for_anisotropy(LagrangianKind::anisotropic, kF2, a);
  const Eigen::VectorXd x = vec({0.5, 0.5});
  EXPECT_DOUBLE_EQ(f1(x, vec({1, 1})), 2.0);
  EXPECT_DOUBLE_EQ(f1(x, vec({0, 0})), 0.0);
  EXPECT_NEAR(f2(x, vec({1, -1})), std::exp(4.0) - 1.0, 1e-12);
  EXPECT_EQ(f1.arg_dim(), 2);
  EXPECT_EQ(f1.x_dim(), 2);
}

TEST(Lagrangian, DimensionAndKindErrors) {
  EXPECT_THROW(Lagrangian::parse(LagrangianKind::euclidean, "q3", 2, 2), DimensionError);
  EXPECT_THROW(Lagrangian::parse(LagrangianKind::euclidean, "x3", 2, 2), DimensionError);
  EXPECT_THROW(parse_kind("riemannian"), InvalidArgument);
  EXPECT_EQ(parse_kind("anisotropic"), LagrangianKind::anisotropic);
  const Lagrangian f = Lagrangian::parse(LagrangianKind::euclidean, "q1", 2, 2);
  EXPECT_THROW(f(vec({0.5}), vec({1, 1})), DimensionError);
  EXPECT_THROW(f(vec({0.5, 0.5}), vec({1})), DimensionError);
  const Anisotropy h = builtin("heisenberg");
  EXPECT_THROW(lift(Lagrangian::for_anisotropy(LagrangianKind::anisotropic, "q1", h), h), InvalidArgument);
  EXPECT_THROW(pushforward(Lagrangian::for_anisotropy(LagrangianKind::euclidean, "q1", h), h), InvalidArgument);
  EXPECT_THROW(lift(Lagrangian::parse(LagrangianKind::euclidean, "q1", 2, 2), h), DimensionError);
}

TEST(Lagrangian, EvalFlagsNegativeAndNonFinite) {
  const Lagrangian neg = Lagrangian::parse(LagrangianKind::euclidean, "q1", 1, 1);
  EXPECT_TRUE(eval_lagrangian(neg, vec({0.5}), vec({-1})).negative);
  EXPECT_FALSE(eval_lagrangian(neg, vec({0.5}), vec({1})).negative);
  const Lagrangian pole = Lagrangian::parse(LagrangianKind::euclidean, "1/q1", 1, 1);
  EXPECT_THROW(eval_lagrangian(pole, vec({0.5}), vec({0})), NonFiniteError);
}

TEST(Lift, DuplicateRowGivesF1) {
  const Anisotropy a = builtin("duplicate_row");
  const Lagrangian fe = Lagrangian::for_anisotropy(LagrangianKind::euclidean, "2*q1^2", a);
  const Lagrangian lifted = lift(fe, a);
  const Lagrangian f1 = Lagrangian::for_anisotropy(LagrangianKind::anisotropic, kF1, a);
  EXPECT_EQ(lifted.kind(), LagrangianKind::anisotropic);
  EXPECT_EQ(lifted.arg_dim(), 2);
  for (const auto& eta : {vec({1, 1}), vec({1, -1}), vec({3, 1}), vec({-2.5, 0.25})})
    EXPECT_NEAR(lifted(vec({0.3, 0.6}), eta), f1(vec({0.3, 0.6}), eta), 1e-13);
}

TEST(Lift, EuclideanIsIdentity) {
  const Anisotropy a = builtin("euclidean");
  const Lagrangian fe = Lagrangian::for_anisotropy(LagrangianKind::euclidean, "q1^2 + q2^2", a);
  EXPECT_DOUBLE_EQ(lift(fe, a)(vec({0.5, 0.5}), vec({3, 4})), 25.0);
}

TEST(Pushforward, F1AndF2AgreeAfterPush) {
  const Anisotropy a = builtin("duplicate_row");
  const Lagrangian p1 = pushforward(Lagrangian::for_anisotropy(LagrangianKind::anisotropic, kF1, a), a);
  const Lagrangian p2 = pushforward(Lagrangian::for_anisotropy(LagrangianKind::anisotropic, kF2, a), a);
  for (const auto& xi : {vec({1, 7}), vec({-2, 3}), vec({0.5, 0})}) {
    EXPECT_NEAR(p1(vec({0.5, 0.5}), xi), 2 * xi[0] * xi[0], 1e-12);
    EXPECT_NEAR(p2(vec({0.5, 0.5}), xi), 2 * xi[0] * xi[0], 1e-12);
  }
  EXPECT_EQ(p1.kind(), LagrangianKind::euclidean);
}

TEST(Pushforward, HeisenbergUsesCxi) {
  const Anisotropy h = builtin("heisenberg");
  const Lagrangian f = Lagrangian::for_anisotropy(LagrangianKind::anisotropic, "q1^2 + q2^2", h);
  const Lagrangian p = pushforward(f, h);
  // Cxi at x = (0.2, 0.4, *) for xi = e3 is (0.4, -0.2).
  EXPECT_NEAR(p(vec({0.2, 0.4, 0.9}), vec({0, 0, 1})), 0.2, 1e-15);
}

TEST(KernelConstancy, WorkedExample) {
  const Anisotropy a = builtin("duplicate_row");
  const Lagrangian f1 = Lagrangian::for_anisotropy(LagrangianKind::anisotropic, kF1, a);
  const Lagrangian f2 = Lagrangian::for_anisotropy(LagrangianKind::anisotropic, kF2, a);
  const CheckReport r1 = check_kernel_constancy(f1, a, 1e-8, small());
  EXPECT_TRUE(r1.pass);
  EXPECT_EQ(r1.check, "kernel_constancy_anisotropic");
  const CheckReport r2 = check_kernel_constancy(f2, a, 1e-8, small());
  EXPECT_FALSE(r2.pass);
  ASSERT_TRUE(r2.witness.has_value());
  EXPECT_EQ(r2.witness->arg, (std::vector<double>{1.0, -1.0}));
  EXPECT_NEAR(r2.witness->value, std::exp(4.0) - 1.0, 1e-9);
  EXPECT_NEAR(r2.witness->reference, 0.0, 1e-12);
}

TEST(KernelConstancy, EuclideanFormUsesProjector) {
  const Anisotropy a = builtin("duplicate_row");
  const Lagrangian depends_on_kernel = Lagrangian::for_anisotropy(LagrangianKind::euclidean, "q1^2 + q2^2", a);
  EXPECT_FALSE(check_kernel_constancy(depends_on_kernel, a, 1e-8, small()).pass);
  EXPECT_TRUE(check_kernel_constancy(project_to_row_space(depends_on_kernel, a), a, 1e-8, small()).pass);
  const CheckReport r = check_kernel_constancy(Lagrangian::for_anisotropy(LagrangianKind::euclidean, "q1^2", a), a, 1e-8, small());
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.check, "kernel_constancy_euclidean");
}

TEST(KernelConstancy, FullRankSquarePasses) {
  const Anisotropy a = builtin("riemannian_frame");
  const Lagrangian f = Lagrangian::for_anisotropy(LagrangianKind::anisotropic, "exp(q1) + q2^4", a);
  SamplingOptions o = small();
  o.radius = 3.0;
  EXPECT_TRUE(check_kernel_constancy(f, a, 1e-8, o).pass);
}

TEST(Convexity, Examples) {
  const Anisotropy a = builtin("duplicate_row");
  EXPECT_TRUE(check_convexity(Lagrangian::for_anisotropy(LagrangianKind::anisotropic, kF1, a), a.domain(), 1e-9, small()).pass);
  const CheckReport sq = check_convexity(Lagrangian::for_anisotropy(LagrangianKind::anisotropic, "sqrt(abs(q1))", a),
                                         a.domain(), 1e-9, small());
  EXPECT_FALSE(sq.pass);
  ASSERT_TRUE(sq.witness.has_value());
  EXPECT_EQ(sq.witness->arg2.size(), 2u);
  EXPECT_TRUE(check_convexity(Lagrangian::for_anisotropy(LagrangianKind::anisotropic, "q1 + q2 + 40", a), a.domain(), 1e-9,
                              small())
                  .pass);
}

TEST(GrowthBound, Examples) {
  const Anisotropy a = builtin("duplicate_row");
  const GrowthBound quad{Expr(0.0), 1.0, 2.0};
  EXPECT_TRUE(check_growth_bound(Lagrangian::for_anisotropy(LagrangianKind::anisotropic, kF1, a), a, quad, small()).pass);
  EXPECT_TRUE(check_growth_bound(Lagrangian::for_anisotropy(LagrangianKind::anisotropic, kF2, a), a, quad, small()).pass);
  const Anisotropy e = builtin("euclidean");
  const CheckReport quartic =
      check_growth_bound(Lagrangian::for_anisotropy(LagrangianKind::euclidean, "(q1^2+q2^2)^2", e), e, quad, small());
  EXPECT_FALSE(quartic.pass);
  ASSERT_TRUE(quartic.witness.has_value());
  EXPECT_GT(quartic.witness->value, quartic.witness->reference);
  EXPECT_THROW(check_growth_bound(Lagrangian::for_anisotropy(LagrangianKind::euclidean, "q1", e), e,
                                  GrowthBound{Expr(0.0), -1.0, 2.0}, small()),
               InvalidArgument);
}

TEST(GrowthBound, QuarticFailsAtRadiusTwo) {
  const Anisotropy e = builtin("euclidean");
  const Lagrangian f = Lagrangian::for_anisotropy(LagrangianKind::euclidean, "(q1^2+q2^2)^2", e);
  // |xi| = 2: 16 > 4.
  EXPECT_DOUBLE_EQ(f(vec({0.5, 0.5}), vec({2, 0})), 16.0);
}

TEST(EquivalentOnImage, Examples) {
  const Anisotropy a = builtin("duplicate_row");
  const Lagrangian f1 = Lagrangian::for_anisotropy(LagrangianKind::anisotropic, kF1, a);
  const Lagrangian f2 = Lagrangian::for_anisotropy(LagrangianKind::anisotropic, kF2, a);
  EXPECT_TRUE(equivalent_on_image(f1, f2, a, 1e-10, small()).pass);
  EXPECT_TRUE(equivalent_on_image(f1, f1, builtin("duplicate_row"), 1e-10, small()).pass);
  const Lagrangian shifted = Lagrangian::for_anisotropy(LagrangianKind::anisotropic, std::string(kF1) + " + 1", a);
  const CheckReport r = equivalent_on_image(f1, shifted, a, 1e-10, small());
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->arg, (std::vector<double>{0.0, 0.0}));
  EXPECT_THROW(equivalent_on_image(pushforward(f1, a), f1, a, 1e-10, small()), InvalidArgument);
}

TEST(Nonnegative, DetectsNegativeValues) {
  const Anisotropy a = builtin("duplicate_row");
  EXPECT_TRUE(check_nonnegative(Lagrangian::for_anisotropy(LagrangianKind::anisotropic, kF2, a), a.domain(), small()).pass);
  EXPECT_FALSE(check_nonnegative(Lagrangian::for_anisotropy(LagrangianKind::anisotropic, "q1", a), a.domain(), small()).pass);
}

TEST(Checks, ReportsAreDeterministic) {
  const Anisotropy a = builtin("heisenberg");
  const Lagrangian f = Lagrangian::for_anisotropy(LagrangianKind::anisotropic, "q1^4 - q2^2 + 100", a);
  const auto r1 = to_json(check_convexity(f, a.domain(), 1e-9, small(5)));
  const auto r2 = to_json(check_convexity(f, a.domain(), 1e-9, small(5)));
  EXPECT_EQ(r1.dump(), r2.dump());
  EXPECT_NE(r1.dump(), to_json(check_convexity(f, a.domain(), 1e-9, small(6))).dump());
}

TEST(Checks, NonFiniteCountsAsViolation) {
  const Anisotropy a = builtin("euclidean");
  const Lagrangian f = Lagrangian::for_anisotropy(LagrangianKind::euclidean, "1/(q1^2)", a);
  const CheckReport r = check_kernel_constancy(f, a, 1e-8, small());
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.warnings.empty());
  const auto j = to_json(r);
  EXPECT_EQ(j["max_residual"], "inf");
}

TEST(LatticeProbes, OrderAndSize) {
  const auto p = lattice_probes(2);
  ASSERT_EQ(p.size(), 9u);
  EXPECT_EQ(p[0], vec({0, 0}));
  EXPECT_EQ(p[1], vec({0, 1}));
  EXPECT_EQ(p[2], vec({0, -1}));
  EXPECT_EQ(p[5], vec({1, -1}));
  EXPECT_EQ(lattice_probes(7).size(), 15u);
}
