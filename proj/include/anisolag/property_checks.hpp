#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "anisolag/anisotropy.hpp"
#include "anisolag/check_report.hpp"
#include "anisolag/expr.hpp"
#include "anisolag/lagrangian.hpp"

namespace anisolag {

/// Sampling plan shared by the property checks.
///
/// Each of the x_samples points gets its own generator derived from `seed`,
/// then is paired with the lattice probes ({0, 1, -1}^d, skipped for d > 6)
/// and with arg_samples random arguments drawn from [-radius, radius]^d.
/// On failure the witness is the worst violating lattice probe when one
/// exists, otherwise the worst violating random sample.
struct SamplingOptions {
  std::size_t x_samples = 200;
  std::size_t arg_samples = 500;
  double radius = 10.0;
  std::uint64_t seed = 0;
  bool lattice_probes = true;
};

/// Lattice directions {0, 1, -1}^d ordered with the first coordinate slowest
/// and the digits in the order 0, 1, -1. Starts with the zero vector.
std::vector<Eigen::VectorXd> lattice_probes(int dim);

/// Invariance along directions the anisotropy cannot see. Euclidean f is
/// compared at xi and Pi_x xi; anisotropic f at eta and C(x) C_P(x) eta.
/// Deviation is |f(arg) - f(proj)| / (1 + |f(proj)|).
CheckReport check_kernel_constancy(const Lagrangian& f, const Anisotropy& a, double tol = 1e-8,
                                   const SamplingOptions& options = {});

/// Midpoint convexity f(x, (u+v)/2) <= (f(x,u) + f(x,v))/2 + tol (1 + |avg|).
CheckReport check_convexity(const Lagrangian& f, const Box& x_domain, double tol = 1e-8,
                            const SamplingOptions& options = {});

struct GrowthBound {
  Expr a = Expr(0.0);
  double b = 1.0;
  double p = 2.0;
};

/// f(x, C(x) xi) <= a(x) + b |C(x) xi|^p + 1e-9 for anisotropic f, and
/// f_e(x, xi) <= a(x) + b |C(x) xi|^p + 1e-9 for euclidean f_e.
CheckReport check_growth_bound(const Lagrangian& f, const Anisotropy& a, const GrowthBound& bound,
                               const SamplingOptions& options = {});

/// |f1(x, C xi) - f2(x, C xi)| <= tol (1 + |f1|) for anisotropic f1, f2.
CheckReport equivalent_on_image(const Lagrangian& f1, const Lagrangian& f2, const Anisotropy& a, double tol = 1e-8,
                                const SamplingOptions& options = {});

/// Sampled f >= -1e-12.
CheckReport check_nonnegative(const Lagrangian& f, const Box& x_domain, const SamplingOptions& options = {});

}  // namespace anisolag
