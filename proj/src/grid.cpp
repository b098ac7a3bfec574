#include "anisolag/grid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include "anisolag/error.hpp"
#include "anisolag/parallel.hpp"
#include "anisolag/pseudoinverse.hpp"

namespace anisolag {

Grid::Grid(Box box, std::vector<int> resolution) : box_(std::move(box)), resolution_(std::move(resolution)) {
  if (static_cast<int>(resolution_.size()) != box_.dim()) throw DimensionError("grid resolution does not match box dimension");
  for (int r : resolution_)
    if (r < 2) throw InvalidArgument("grid needs at least 2 cells per axis");
  strides_.assign(resolution_.size(), 1);
  size_ = 1;
  for (int k = dim() - 1; k >= 0; --k) {
    const auto kk = static_cast<std::size_t>(k);
    strides_[kk] = size_;
    size_ *= static_cast<std::size_t>(resolution_[kk]);
  }
}

Grid Grid::uniform(const Box& box, int cells_per_axis) {
  return Grid(box, std::vector<int>(static_cast<std::size_t>(box.dim()), cells_per_axis));
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int k = 0; k < dim(); ++k) v *= spacing(k);
  return v;
}

std::vector<int> Grid::unflatten(std::size_t flat) const {
  std::vector<int> idx(resolution_.size());
  for (std::size_t k = 0; k < resolution_.size(); ++k) {
    idx[k] = static_cast<int>(flat / strides_[k]);
    flat %= strides_[k];
  }
  return idx;
}

std::size_t Grid::flatten(const std::vector<int>& index) const {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < resolution_.size(); ++k) flat += static_cast<std::size_t>(index[k]) * strides_[k];
  return flat;
}

double Grid::center_coordinate(int axis, int i) const {
  const auto kk = static_cast<std::size_t>(axis);
  return box_.lo[kk] + box_.width(axis) * (2.0 * i + 1.0) / (2.0 * resolution_[kk]);
}

Eigen::VectorXd Grid::center(std::size_t flat) const {
  Eigen::VectorXd c(dim());
  for (int k = 0; k < dim(); ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const int i = static_cast<int>(flat / strides_[kk]);
    flat %= strides_[kk];
    c[k] = center_coordinate(k, i);
  }
  return c;
}

std::size_t Grid::cell_of(const Eigen::VectorXd& point) const {
  if (point.size() != dim()) throw DimensionError("point has the wrong dimension for this grid");
  if (!box_.contains(point)) throw DomainError("point lies outside the grid box");
  std::vector<int> idx(resolution_.size());
  for (int k = 0; k < dim(); ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const double frac = (point[k] - box_.lo[kk]) / box_.width(k);
    const int i = static_cast<int>(std::floor(frac * resolution_[kk]));
    idx[kk] = std::clamp(i, 0, resolution_[kk] - 1);
  }
  return flatten(idx);
}

GridFunction::GridFunction(Grid g, int w, std::vector<double> v) : grid(std::move(g)), width(w), values(std::move(v)) {
  if (width < 1) throw InvalidArgument("grid function width must be positive");
  if (values.size() != grid.size() * static_cast<std::size_t>(width))
    throw DimensionError("grid function has " + std::to_string(values.size()) + " values, expected " +
                         std::to_string(grid.size() * static_cast<std::size_t>(width)));
  for (double v : values)
    if (!std::isfinite(v)) throw NonFiniteError("grid function values must be finite");
}

GridFunction GridFunction::sample(const Grid& grid, const Expr& u) {
  if (u.q_arity() > 0) throw InvalidArgument("a grid function expression may only reference x variables");
  std::vector<double> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    const Eigen::VectorXd c = grid.center(k);
    values[k] = u.eval(std::span<const double>(c.data(), static_cast<std::size_t>(c.size())));
  });
  return GridFunction(grid, 1, std::move(values));
}

Eigen::VectorXd GridFunction::vector_at(std::size_t cell) const {
  Eigen::VectorXd v(width);
  for (int c = 0; c < width; ++c) v[c] = at(cell, c);
  return v;
}

GridFunction euclidean_gradient(const GridFunction& u) {
  if (u.width != 1) throw InvalidArgument("gradient needs a scalar grid function");
  const Grid& g = u.grid;
  const int n = g.dim();
  std::vector<double> out(g.size() * static_cast<std::size_t>(n));
  parallel_for(g.size(), [&](std::size_t cell) {
    const std::vector<int> idx = g.unflatten(cell);
    for (int k = 0; k < n; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      const int N = g.resolution()[kk];
      const int i = idx[kk];
      const std::size_t s = g.stride(k);
      const double h = g.spacing(k);
      const auto val = [&](int offset) {
        return u.values[static_cast<std::size_t>(static_cast<long long>(cell) + offset * static_cast<long long>(s))];
      };
      double d = 0.0;
      if (N == 2) {
        d = i == 0 ? (val(1) - val(0)) / h : (val(0) - val(-1)) / h;
      } else if (i == 0) {
        d = (-3.0 * val(0) + 4.0 * val(1) - val(2)) / (2.0 * h);
      } else if (i == N - 1) {
        d = (3.0 * val(0) - 4.0 * val(-1) + val(-2)) / (2.0 * h);
      } else {
        d = (val(1) - val(-1)) / (2.0 * h);
      }
      out[cell * static_cast<std::size_t>(n) + kk] = d;
    }
  });
  return GridFunction(g, n, std::move(out));
}

GridFunction x_gradient(const GridFunction& u, const Anisotropy& a) {
  if (u.grid.dim() != a.n()) throw DimensionError("grid dimension does not match the anisotropy");
  if (!a.domain().contains(u.grid.box())) throw DomainError("grid box is not contained in the anisotropy domain");
  const GridFunction du = euclidean_gradient(u);
  const int m = a.m();
  std::vector<double> out(u.grid.size() * static_cast<std::size_t>(m));
  parallel_for(u.grid.size(), [&](std::size_t cell) {
    const Eigen::VectorXd xu = a.coefficient_matrix_unchecked(u.grid.center(cell)) * du.vector_at(cell);
    for (int j = 0; j < m; ++j) out[cell * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] = xu[j];
  });
  return GridFunction(u.grid, m, std::move(out));
}

namespace {

void require_region(const Grid& g, const Box& region) {
  if (region.dim() != g.dim()) throw DimensionError("region dimension does not match the grid");
  if (!g.box().contains(region)) throw DomainError("region is not contained in the grid box");
}

double integrate(const Grid& g, const Box& region, const std::function<double(std::size_t, const Eigen::VectorXd&)>& term) {
  std::vector<double> contrib(g.size(), 0.0);
  parallel_for(g.size(), [&](std::size_t cell) {
    const Eigen::VectorXd c = g.center(cell);
    if (region.contains(c, 0.0)) contrib[cell] = term(cell, c);
  });
  return pairwise_sum(contrib) * g.cell_volume();
}

}  // namespace

double functional_eval(const Lagrangian& f, const GridFunction& u, const Anisotropy& a, const Box& region) {
  if (f.kind() != LagrangianKind::anisotropic || f.arg_dim() != a.m())
    throw DimensionError("functional_eval needs an anisotropic lagrangian with argument dimension m");
  require_region(u.grid, region);
  const GridFunction xu = x_gradient(u, a);
  return integrate(u.grid, region, [&](std::size_t cell, const Eigen::VectorXd& c) {
    const double v = f(c, xu.vector_at(cell));
    if (!std::isfinite(v)) throw NonFiniteError("integrand is not finite at a cell center");
    return v;
  });
}

double euclidean_functional_eval(const Lagrangian& f_e, const GridFunction& u, const Box& region) {
  if (f_e.kind() != LagrangianKind::euclidean || f_e.arg_dim() != u.grid.dim())
    throw DimensionError("euclidean_functional_eval needs a euclidean lagrangian with argument dimension n");
  require_region(u.grid, region);
  const GridFunction du = euclidean_gradient(u);
  return integrate(u.grid, region, [&](std::size_t cell, const Eigen::VectorXd& c) {
    const double v = f_e(c, du.vector_at(cell));
    if (!std::isfinite(v)) throw NonFiniteError("integrand is not finite at a cell center");
    return v;
  });
}

double sobolev_norm(const GridFunction& u, const Anisotropy& a, double p) {
  if (!(p >= 1.0)) throw InvalidArgument("sobolev_norm needs p >= 1");
  if (u.width != 1) throw InvalidArgument("sobolev_norm needs a scalar grid function");
  const GridFunction xu = x_gradient(u, a);
  const Grid& g = u.grid;
  std::vector<double> lu(g.size());
  std::vector<double> lx(g.size());
  for (std::size_t cell = 0; cell < g.size(); ++cell) {
    lu[cell] = std::pow(std::fabs(u.values[cell]), p);
    lx[cell] = std::pow(xu.vector_at(cell).norm(), p);
  }
  const double vol = g.cell_volume();
  return std::pow(pairwise_sum(lu) * vol, 1.0 / p) + std::pow(pairwise_sum(lx) * vol, 1.0 / p);
}

AffineFit best_affine_fit(const GridFunction& u, const std::vector<Expr>& basis, double p) {
  if (p != 2.0) throw InvalidArgument("best_affine_fit supports p = 2 only");
  if (u.width != 1) throw InvalidArgument("best_affine_fit needs a scalar grid function");
  if (basis.empty()) throw InvalidArgument("best_affine_fit needs a non-empty basis");
  const Grid& g = u.grid;
  const auto k = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd phi(static_cast<Eigen::Index>(g.size()), k);
  for (std::size_t cell = 0; cell < g.size(); ++cell) {
    const Eigen::VectorXd c = g.center(cell);
    const std::span<const double> xs(c.data(), static_cast<std::size_t>(c.size()));
    for (Eigen::Index j = 0; j < k; ++j) phi(static_cast<Eigen::Index>(cell), j) = basis[static_cast<std::size_t>(j)].eval(xs);
  }
  if (!phi.allFinite()) throw NonFiniteError("basis function is not finite on the grid");
  const Eigen::Map<const Eigen::VectorXd> uv(u.values.data(), static_cast<Eigen::Index>(u.values.size()));
  const double vol = g.cell_volume();
  const Eigen::MatrixXd gram = vol * (phi.transpose() * phi);
  const Eigen::VectorXd rhs = vol * (phi.transpose() * uv);
  const PointLinearData pl = pinv(gram);

  AffineFit fit;
  fit.coeffs = pl.C_P * rhs;
  fit.rank = pl.rank;
  fit.deficiency = static_cast<int>(k) - pl.rank;
  const Eigen::VectorXd diff = uv - phi * fit.coeffs;
  std::vector<double> sq(g.size());
  for (std::size_t cell = 0; cell < g.size(); ++cell) sq[cell] = diff[static_cast<Eigen::Index>(cell)] * diff[static_cast<Eigen::Index>(cell)];
  fit.residual = std::sqrt(pairwise_sum(sq) * vol);
  return fit;
}

void write_csv(std::ostream& os, const GridFunction& u) {
  const Grid& g = u.grid;
  const int n = g.dim();
  for (int k = 0; k < n; ++k) os << "i" << (k + 1) << ',';
  for (int k = 0; k < n; ++k) os << "x" << (k + 1) << ',';
  for (int c = 0; c < u.width; ++c) os << "v" << (c + 1) << (c + 1 < u.width ? "," : "\n");
  const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t cell = 0; cell < g.size(); ++cell) {
    const auto idx = g.unflatten(cell);
    const Eigen::VectorXd c = g.center(cell);
    for (int k = 0; k < n; ++k) os << idx[static_cast<std::size_t>(k)] << ',';
    for (int k = 0; k < n; ++k) os << c[k] << ',';
    for (int j = 0; j < u.width; ++j) os << u.at(cell, j) << (j + 1 < u.width ? "," : "\n");
  }
  os.precision(old_precision);
}

nlohmann::ordered_json metadata_json(const Grid& grid) {
  nlohmann::ordered_json box = nlohmann::ordered_json::array();
  for (int k = 0; k < grid.dim(); ++k)
    box.push_back({grid.box().lo[static_cast<std::size_t>(k)], grid.box().hi[static_cast<std::size_t>(k)]});
  nlohmann::ordered_json j;
  j["box"] = box;
  j["resolution"] = grid.resolution();
  return j;
}

}  // namespace anisolag
