#include "anisolag/property_checks.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "anisolag/error.hpp"
#include "anisolag/parallel.hpp"
#include "anisolag/pseudoinverse.hpp"
#include "anisolag/random.hpp"

namespace anisolag {

namespace {

struct Trial {
  Eigen::VectorXd arg;
  Eigen::VectorXd arg2;
};

struct Outcome {
  double residual = 0.0;
  bool violated = false;
  double value = 0.0;
  double reference = 0.0;
};

struct Candidate {
  double residual = -std::numeric_limits<double>::infinity();
  Witness witness;
  bool set = false;
};

struct PerPoint {
  double max_residual = 0.0;
  bool any_nonfinite = false;
  Candidate probe_violation;
  Candidate random_violation;
};

std::vector<double> to_vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

void consider(Candidate& c, const Outcome& o, const Eigen::VectorXd& x, const Trial& t) {
  if (c.set && !(o.residual > c.residual)) return;
  c.set = true;
  c.residual = o.residual;
  c.witness.x = to_vec(x);
  c.witness.arg = to_vec(t.arg);
  c.witness.arg2 = t.arg2.size() > 0 ? to_vec(t.arg2) : std::vector<double>{};
  c.witness.value = o.value;
  c.witness.reference = o.reference;
}

Eigen::VectorXd sample_point(Rng& rng, const Box& box) {
  Eigen::VectorXd x(box.dim());
  for (int k = 0; k < box.dim(); ++k) {
    const auto kk = static_cast<std::size_t>(k);
    x[k] = rng.uniform(box.lo[kk], box.hi[kk]);
  }
  return x;
}

Eigen::VectorXd sample_arg(Rng& rng, int dim, double radius) {
  Eigen::VectorXd v(dim);
  for (int k = 0; k < dim; ++k) v[k] = rng.uniform(-radius, radius);
  return v;
}

/// Shared sampling loop. `evaluate` must be pure; each x-sample is processed
/// independently and merged in index order.
CheckReport run_sampled(const std::string& name, const Box& box, const SamplingOptions& options,
                        const std::vector<Trial>& probes, const std::function<Trial(Rng&)>& random_trial,
                        const std::function<Outcome(const Eigen::VectorXd&, const Trial&)>& evaluate) {
  if (options.radius <= 0.0) throw InvalidArgument("sampling radius must be positive");
  std::vector<PerPoint> results(options.x_samples);
  parallel_for(options.x_samples, [&](std::size_t i) {
    Rng rng(options.seed, i);
    const Eigen::VectorXd x = sample_point(rng, box);
    PerPoint& out = results[i];
    const auto run = [&](const Trial& t, Candidate& slot) {
      Outcome o = evaluate(x, t);
      if (!std::isfinite(o.residual)) {
        out.any_nonfinite = true;
        o.residual = std::numeric_limits<double>::infinity();
        o.violated = true;
      }
      out.max_residual = std::max(out.max_residual, o.residual);
      if (o.violated) consider(slot, o, x, t);
    };
    if (options.lattice_probes)
      for (const Trial& t : probes) run(t, out.probe_violation);
    for (std::size_t s = 0; s < options.arg_samples; ++s) run(random_trial(rng), out.random_violation);
  });

  CheckReport report;
  report.check = name;
  report.seed = options.seed;
  report.samples = options.x_samples * ((options.lattice_probes ? probes.size() : 0) + options.arg_samples);
  Candidate probe_best;
  Candidate random_best;
  bool nonfinite = false;
  for (const PerPoint& r : results) {
    report.max_residual = std::max(report.max_residual, r.max_residual);
    nonfinite = nonfinite || r.any_nonfinite;
    if (r.probe_violation.set && (!probe_best.set || r.probe_violation.residual > probe_best.residual))
      probe_best = r.probe_violation;
    if (r.random_violation.set && (!random_best.set || r.random_violation.residual > random_best.residual))
      random_best = r.random_violation;
  }
  report.pass = !probe_best.set && !random_best.set;
  if (probe_best.set) {
    report.witness = probe_best.witness;
  } else if (random_best.set) {
    report.witness = random_best.witness;
  }
  if (nonfinite) report.warnings.emplace_back("non-finite values encountered; treated as violations");
  return report;
}

std::vector<Trial> single_probes(int dim) {
  std::vector<Trial> out;
  for (auto& v : lattice_probes(dim)) out.push_back(Trial{std::move(v), {}});
  return out;
}

std::vector<Trial> pair_probes(int dim) {
  std::vector<Trial> out;
  if (dim <= 3) {
    const auto lattice = lattice_probes(dim);
    for (std::size_t i = 0; i < lattice.size(); ++i)
      for (std::size_t j = i + 1; j < lattice.size(); ++j) out.push_back(Trial{lattice[i], lattice[j]});
    return out;
  }
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(dim);
  for (int k = 0; k < dim; ++k) {
    out.push_back(Trial{zero, Eigen::VectorXd::Unit(dim, k)});
    out.push_back(Trial{zero, -Eigen::VectorXd::Unit(dim, k)});
  }
  return out;
}

void require_x_dim(const Lagrangian& f, int n, const char* op) {
  if (f.x_dim() != n)
    throw DimensionError(std::string(op) + ": lagrangian point dimension " + std::to_string(f.x_dim()) +
                         " does not match n = " + std::to_string(n));
}

}  // namespace

std::vector<Eigen::VectorXd> lattice_probes(int dim) {
  std::vector<Eigen::VectorXd> out;
  if (dim <= 0) return out;
  if (dim > 6) {
    out.push_back(Eigen::VectorXd::Zero(dim));
    for (int k = 0; k < dim; ++k) {
      out.push_back(Eigen::VectorXd::Unit(dim, k));
      out.push_back(-Eigen::VectorXd::Unit(dim, k));
    }
    return out;
  }
  static constexpr double digits[3] = {0.0, 1.0, -1.0};
  std::size_t total = 1;
  for (int k = 0; k < dim; ++k) total *= 3;
  out.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    Eigen::VectorXd v(dim);
    std::size_t rest = code;
    for (int k = dim - 1; k >= 0; --k) {
      v[k] = digits[rest % 3];
      rest /= 3;
    }
    out.push_back(std::move(v));
  }
  return out;
}

CheckReport check_kernel_constancy(const Lagrangian& f, const Anisotropy& a, double tol, const SamplingOptions& options) {
  require_x_dim(f, a.n(), "check_kernel_constancy");
  const bool euclidean = f.kind() == LagrangianKind::euclidean;
  const int dim = euclidean ? a.n() : a.m();
  if (f.arg_dim() != dim)
    throw DimensionError("check_kernel_constancy: lagrangian argument dimension " + std::to_string(f.arg_dim()) +
                         " does not match " + std::to_string(dim));
  const double radius = options.radius;
  return run_sampled(
      euclidean ? "kernel_constancy_euclidean" : "kernel_constancy_anisotropic", a.domain(), options, single_probes(dim),
      [dim, radius](Rng& rng) { return Trial{sample_arg(rng, dim, radius), {}}; },
      [&](const Eigen::VectorXd& x, const Trial& t) {
        const PointLinearData pl = pinv(a.coefficient_matrix_unchecked(x));
        const Eigen::VectorXd projected = euclidean ? Eigen::VectorXd(pl.Pi * t.arg) : Eigen::VectorXd(pl.C * (pl.C_P * t.arg));
        const double value = f(x, t.arg);
        const double reference = f(x, projected);
        const double residual = std::fabs(value - reference) / (1.0 + std::fabs(reference));
        return Outcome{residual, residual > tol, value, reference};
      });
}

CheckReport check_convexity(const Lagrangian& f, const Box& x_domain, double tol, const SamplingOptions& options) {
  require_x_dim(f, x_domain.dim(), "check_convexity");
  const int dim = f.arg_dim();
  const double radius = options.radius;
  return run_sampled(
      "convexity", x_domain, options, pair_probes(dim),
      [dim, radius](Rng& rng) {
        Eigen::VectorXd u = sample_arg(rng, dim, radius);
        Eigen::VectorXd v = sample_arg(rng, dim, radius);
        return Trial{std::move(u), std::move(v)};
      },
      [&](const Eigen::VectorXd& x, const Trial& t) {
        const double mid = f(x, 0.5 * (t.arg + t.arg2));
        const double avg = 0.5 * (f(x, t.arg) + f(x, t.arg2));
        const double excess = (mid - avg) / (1.0 + std::fabs(avg));
        return Outcome{std::max(excess, 0.0), excess > tol, mid, avg};
      });
}

CheckReport check_growth_bound(const Lagrangian& f, const Anisotropy& a, const GrowthBound& bound,
                               const SamplingOptions& options) {
  if (bound.b < 0.0) throw InvalidArgument("growth bound needs b >= 0");
  if (bound.p < 1.0) throw InvalidArgument("growth bound needs p >= 1");
  require_x_dim(f, a.n(), "check_growth_bound");
  const bool euclidean = f.kind() == LagrangianKind::euclidean;
  const int expected = euclidean ? a.n() : a.m();
  if (f.arg_dim() != expected)
    throw DimensionError("check_growth_bound: lagrangian argument dimension " + std::to_string(f.arg_dim()) +
                         " does not match " + std::to_string(expected));
  const int n = a.n();
  const double radius = options.radius;
  return run_sampled(
      "growth_bound", a.domain(), options, single_probes(n),
      [n, radius](Rng& rng) { return Trial{sample_arg(rng, n, radius), {}}; },
      [&](const Eigen::VectorXd& x, const Trial& t) {
        const Eigen::MatrixXd C = a.coefficient_matrix_unchecked(x);
        const Eigen::VectorXd image = C * t.arg;
        const double lhs = euclidean ? f(x, t.arg) : f(x, image);
        const double ax = bound.a.eval(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
        const double rhs = ax + bound.b * std::pow(image.norm(), bound.p);
        const double excess = lhs - rhs;
        return Outcome{std::max(excess, 0.0), excess > 1e-9, lhs, rhs};
      });
}

CheckReport equivalent_on_image(const Lagrangian& f1, const Lagrangian& f2, const Anisotropy& a, double tol,
                                const SamplingOptions& options) {
  for (const Lagrangian* f : {&f1, &f2}) {
    if (f->kind() != LagrangianKind::anisotropic)
      throw InvalidArgument("equivalent_on_image compares anisotropic lagrangians");
    if (f->arg_dim() != a.m()) throw DimensionError("equivalent_on_image: lagrangian argument dimension must be m");
    require_x_dim(*f, a.n(), "equivalent_on_image");
  }
  const int n = a.n();
  const double radius = options.radius;
  return run_sampled(
      "equivalent_on_image", a.domain(), options, single_probes(n),
      [n, radius](Rng& rng) { return Trial{sample_arg(rng, n, radius), {}}; },
      [&](const Eigen::VectorXd& x, const Trial& t) {
        const Eigen::VectorXd image = a.coefficient_matrix_unchecked(x) * t.arg;
        const double v1 = f1(x, image);
        const double v2 = f2(x, image);
        const double residual = std::fabs(v1 - v2) / (1.0 + std::fabs(v1));
        return Outcome{residual, residual > tol, v1, v2};
      });
}

CheckReport check_nonnegative(const Lagrangian& f, const Box& x_domain, const SamplingOptions& options) {
  require_x_dim(f, x_domain.dim(), "check_nonnegative");
  const int dim = f.arg_dim();
  const double radius = options.radius;
  return run_sampled(
      "nonnegative", x_domain, options, single_probes(dim),
      [dim, radius](Rng& rng) { return Trial{sample_arg(rng, dim, radius), {}}; },
      [&](const Eigen::VectorXd& x, const Trial& t) {
        const double v = f(x, t.arg);
        return Outcome{std::max(-v, 0.0), v < -1e-12, v, 0.0};
      });
}

}  // namespace anisolag
