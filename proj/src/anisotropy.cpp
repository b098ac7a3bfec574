#include "anisolag/anisotropy.hpp"

#include <cmath>

#include "anisolag/error.hpp"
#include "anisolag/random.hpp"

namespace anisolag {

Box::Box(std::vector<double> lower, std::vector<double> upper) : lo(std::move(lower)), hi(std::move(upper)) {
  if (lo.size() != hi.size()) throw DimensionError("box bounds have different lengths");
  if (lo.empty()) throw InvalidArgument("box must have at least one axis");
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (!std::isfinite(lo[k]) || !std::isfinite(hi[k]) || !(lo[k] < hi[k]))
      throw InvalidArgument("box axis " + std::to_string(k) + " must satisfy lo < hi with finite bounds");
  }
}

Box Box::cube(int n, double lower, double upper) {
  if (n <= 0) throw InvalidArgument("box dimension must be positive");
  return Box(std::vector<double>(static_cast<std::size_t>(n), lower), std::vector<double>(static_cast<std::size_t>(n), upper));
}

double Box::volume() const {
  double v = 1.0;
  for (int k = 0; k < dim(); ++k) v *= width(k);
  return v;
}

Eigen::VectorXd Box::center() const {
  Eigen::VectorXd c(dim());
  for (int k = 0; k < dim(); ++k) c[k] = 0.5 * (lo[static_cast<std::size_t>(k)] + hi[static_cast<std::size_t>(k)]);
  return c;
}

bool Box::contains(const Eigen::VectorXd& point, double rel_slack) const {
  if (point.size() != dim()) return false;
  for (int k = 0; k < dim(); ++k) {
    const double slack = rel_slack * (1.0 + width(k));
    const auto kk = static_cast<std::size_t>(k);
    if (!(point[k] >= lo[kk] - slack && point[k] <= hi[kk] + slack)) return false;
  }
  return true;
}

bool Box::contains(const Box& inner, double rel_slack) const {
  if (inner.dim() != dim()) return false;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    const double slack = rel_slack * (1.0 + width(static_cast<int>(k)));
    if (inner.lo[k] < lo[k] - slack || inner.hi[k] > hi[k] + slack) return false;
  }
  return true;
}

Anisotropy::Anisotropy(std::vector<std::vector<Expr>> coeffs, Box domain, std::string name)
    : Anisotropy(std::move(coeffs), std::move(domain), std::move(name), Options{}) {}

Anisotropy::Anisotropy(std::vector<std::vector<Expr>> coeffs, Box domain, std::string name, const Options& options)
    : domain_(std::move(domain)), coeffs_(std::move(coeffs)), name_(std::move(name)) {
  m_ = static_cast<int>(coeffs_.size());
  n_ = domain_.dim();
  if (m_ <= 0) throw InvalidArgument("anisotropy needs at least one vector field");
  if (n_ <= 0) throw InvalidArgument("anisotropy needs a non-empty domain box");
  if (options.strict && m_ > n_)
    throw InvalidArgument("strict mode requires m <= n (got m=" + std::to_string(m_) + ", n=" + std::to_string(n_) + ")");
  for (int j = 0; j < m_; ++j) {
    const auto& row = coeffs_[static_cast<std::size_t>(j)];
    if (static_cast<int>(row.size()) != n_)
      throw DimensionError("coefficient row " + std::to_string(j) + " has " + std::to_string(row.size()) +
                           " entries, expected " + std::to_string(n_));
    for (const Expr& e : row) {
      if (e.q_arity() > 0) throw InvalidArgument("coefficient " + e.str() + " may only reference x variables");
      if (e.x_arity() > n_) throw DimensionError("coefficient " + e.str() + " references a variable beyond x" + std::to_string(n_));
    }
  }

  // Corners plus random interior points.
  std::vector<Eigen::VectorXd> probes;
  if (n_ <= 10) {
    for (unsigned mask = 0; mask < (1U << static_cast<unsigned>(n_)); ++mask) {
      Eigen::VectorXd p(n_);
      for (int k = 0; k < n_; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        p[k] = ((mask >> static_cast<unsigned>(k)) & 1U) ? domain_.hi[kk] : domain_.lo[kk];
      }
      probes.push_back(std::move(p));
    }
  }
  Rng rng(0x5eed);
  for (int s = 0; s < options.finiteness_samples; ++s) {
    Eigen::VectorXd p(n_);
    for (int k = 0; k < n_; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      p[k] = rng.uniform(domain_.lo[kk], domain_.hi[kk]);
    }
    probes.push_back(std::move(p));
  }
  for (const auto& p : probes) {
    const Eigen::MatrixXd c = coefficient_matrix_unchecked(p);
    if (!c.allFinite()) throw NonFiniteError("coefficient matrix is not finite somewhere on the domain box");
  }
}

void Anisotropy::check_point(const Eigen::VectorXd& x) const {
  if (x.size() != n_) throw DimensionError("point has dimension " + std::to_string(x.size()) + ", expected " + std::to_string(n_));
  if (!domain_.contains(x)) throw DomainError("point lies outside the anisotropy domain");
}

Eigen::MatrixXd Anisotropy::coefficient_matrix_unchecked(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd c(m_, n_);
  const std::span<const double> xs(x.data(), static_cast<std::size_t>(x.size()));
  for (int j = 0; j < m_; ++j)
    for (int i = 0; i < n_; ++i) c(j, i) = coeff(j, i).eval(xs);
  return c;
}

Eigen::MatrixXd Anisotropy::coefficient_matrix(const Eigen::VectorXd& x) const {
  check_point(x);
  return coefficient_matrix_unchecked(x);
}

Eigen::VectorXd Anisotropy::apply_gradient(const Eigen::VectorXd& x, const Eigen::VectorXd& xi) const {
  if (xi.size() != n_) throw DimensionError("gradient has dimension " + std::to_string(xi.size()) + ", expected " + std::to_string(n_));
  return coefficient_matrix(x) * xi;
}

Eigen::VectorXd Anisotropy::lie_bracket(int i, int j, const Eigen::VectorXd& x) const {
  if (i < 0 || i >= m_ || j < 0 || j >= m_) throw InvalidArgument("field index out of range");
  check_point(x);
  const std::span<const double> xs(x.data(), static_cast<std::size_t>(x.size()));
  // [X_i, X_j]^k = sum_l c_{i,l} d_l c_{j,k} - c_{j,l} d_l c_{i,k}
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_);
  for (int k = 0; k < n_; ++k) {
    double acc = 0.0;
    for (int l = 0; l < n_; ++l) {
      const double dj = coeff(j, k).derivative_x(l).eval(xs);
      const double di = coeff(i, k).derivative_x(l).eval(xs);
      acc += coeff(i, l).eval(xs) * dj - coeff(j, l).eval(xs) * di;
    }
    out[k] = acc;
  }
  return out;
}

double Anisotropy::lipschitz_estimate(int pairs, std::uint64_t seed) const {
  Rng rng(seed);
  double best = 0.0;
  Eigen::VectorXd a(n_);
  Eigen::VectorXd b(n_);
  for (int s = 0; s < pairs; ++s) {
    for (int k = 0; k < n_; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      a[k] = rng.uniform(domain_.lo[kk], domain_.hi[kk]);
      b[k] = rng.uniform(domain_.lo[kk], domain_.hi[kk]);
    }
    const double dist = (a - b).norm();
    if (dist == 0.0) continue;
    const double q = (coefficient_matrix_unchecked(a) - coefficient_matrix_unchecked(b)).norm() / dist;
    best = std::max(best, q);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

namespace {

using Rows = std::vector<std::vector<Expr>>;

Box pick_box(const CatalogParams& params, Box fallback) {
  if (!params.box) return fallback;
  if (params.box->dim() != fallback.dim())
    throw InvalidArgument("box override has dimension " + std::to_string(params.box->dim()) + ", expected " +
                          std::to_string(fallback.dim()));
  return *params.box;
}

Anisotropy make_riemannian_frame(const CatalogParams& params) {
  Rows frame;
  Box fallback;
  if (params.frame) {
    frame = *params.frame;
    const auto n = static_cast<int>(frame.size());
    if (n == 0) throw InvalidArgument("riemannian_frame needs a non-empty frame");
    for (const auto& row : frame)
      if (static_cast<int>(row.size()) != n) throw InvalidArgument("riemannian_frame must be square (m = n)");
    fallback = Box::cube(n, 0.0, 1.0);
  } else {
    // X_1 = d/dx1, X_2 = x2 d/dx1 + d/dx2: unit determinant everywhere.
    frame = Rows{{Expr(1.0), Expr(0.0)}, {Expr::x(1), Expr(1.0)}};
    fallback = Box::cube(2, 0.0, 1.0);
  }
  Anisotropy a(std::move(frame), pick_box(params, fallback), "riemannian_frame");

  Rng rng(0xf4a3e);
  const Box& box = a.domain();
  for (int s = 0; s < 256; ++s) {
    Eigen::VectorXd p(a.n());
    for (int k = 0; k < a.n(); ++k) {
      const auto kk = static_cast<std::size_t>(k);
      p[k] = s == 0 ? box.center()[k] : rng.uniform(box.lo[kk], box.hi[kk]);
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a.coefficient_matrix(p));
    const auto& sv = svd.singularValues();
    if (!(sv[sv.size() - 1] > 1e-12 * std::max(1.0, sv[0])))
      throw InvalidArgument("riemannian_frame is singular somewhere on its box; a frame must have full rank");
  }
  return a;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"euclidean", "heisenberg", "grushin", "split_plane", "duplicate_row",
                                              "riemannian_frame"};
  return names;
}

Anisotropy builtin(std::string_view name, const CatalogParams& params) {
  const Expr zero(0.0);
  const Expr one(1.0);
  if (name == "euclidean") {
    if (params.n <= 0) throw InvalidArgument("euclidean anisotropy needs n > 0");
    Rows rows(static_cast<std::size_t>(params.n), std::vector<Expr>(static_cast<std::size_t>(params.n), zero));
    for (std::size_t k = 0; k < rows.size(); ++k) rows[k][k] = one;
    return Anisotropy(std::move(rows), pick_box(params, Box::cube(params.n, 0.0, 1.0)), "euclidean");
  }
  if (name == "heisenberg") {
    // X_1 = d1 + x2 d3, X_2 = d2 - x1 d3
    Rows rows{{one, zero, Expr::x(1)}, {zero, one, -Expr::x(0)}};
    return Anisotropy(std::move(rows), pick_box(params, Box::cube(3, 0.0, 1.0)), "heisenberg");
  }
  if (name == "grushin") {
    // X_1 = d1, X_2 = x1 d2
    Rows rows{{one, zero}, {zero, Expr::x(0)}};
    return Anisotropy(std::move(rows), pick_box(params, Box::cube(2, -1.0, 1.0)), "grushin");
  }
  if (name == "split_plane") {
    // X_2 vanishes for x1 < 0 and equals x1 d2 for x1 >= 0; max(x1, 0) is both branches at once.
    Rows rows{{one, zero}, {zero, max(Expr::x(0), zero)}};
    return Anisotropy(std::move(rows), pick_box(params, Box::cube(2, -1.0, 1.0)), "split_plane");
  }
  if (name == "duplicate_row") {
    Rows rows{{one, zero}, {one, zero}};
    return Anisotropy(std::move(rows), pick_box(params, Box::cube(2, 0.0, 1.0)), "duplicate_row");
  }
  if (name == "riemannian_frame") return make_riemannian_frame(params);
  throw InvalidArgument("unknown catalog anisotropy '" + std::string(name) + "'");
}

}  // namespace anisolag
