#include "anisolag/cc_distance.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <queue>

#include "anisolag/error.hpp"
#include "anisolag/parallel.hpp"
#include "anisolag/pseudoinverse.hpp"

namespace anisolag {

HorizontalGraph::HorizontalGraph(Grid grid, int radius, double tau_span, std::vector<std::size_t> offsets,
                                 std::vector<std::size_t> targets, std::vector<double> weights)
    : grid_(std::move(grid)),
      radius_(radius),
      tau_span_(tau_span),
      offsets_(std::move(offsets)),
      targets_(std::move(targets)),
      weights_(std::move(weights)) {
  if (offsets_.size() != grid_.size() + 1) throw DimensionError("graph offsets must have node_count + 1 entries");
  if (targets_.size() != weights_.size()) throw DimensionError("graph targets and weights differ in length");
}

void HorizontalGraph::write_edge_csv(std::ostream& os) const {
  const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
  os << "src,dst,weight\n";
  for (std::size_t u = 0; u < node_count(); ++u)
    for (std::size_t e = edges_begin(u); e < edges_end(u); ++e) os << u << ',' << targets_[e] << ',' << weights_[e] << '\n';
  os.precision(old_precision);
}

namespace {

/// Pseudo-inverse data at every segment midpoint. Midpoints of cells i and j
/// along an axis sit at lo + width (i + j + 1) / (2N), so they are indexed by
/// the per-axis sums i + j in [0, 2N - 2].
class MidpointTable {
 public:
  MidpointTable(const Anisotropy& a, const Grid& grid) : n_(grid.dim()), m_(a.m()) {
    extent_.resize(static_cast<std::size_t>(n_));
    stride_.resize(static_cast<std::size_t>(n_));
    std::size_t total = 1;
    for (int k = n_ - 1; k >= 0; --k) {
      const auto kk = static_cast<std::size_t>(k);
      extent_[kk] = 2 * grid.resolution()[kk] - 1;
      stride_[kk] = total;
      total *= static_cast<std::size_t>(extent_[kk]);
    }
    const auto nn = static_cast<std::size_t>(n_);
    const auto mm = static_cast<std::size_t>(m_);
    cpt_.resize(total * nn * mm);
    pi_.resize(total * nn * nn);
    parallel_for(total, [&](std::size_t flat) {
      Eigen::VectorXd mid(n_);
      std::size_t rest = flat;
      for (int k = 0; k < n_; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        const auto s = static_cast<double>(rest / stride_[kk]);
        rest %= stride_[kk];
        mid[k] = grid.box().lo[kk] + grid.box().width(k) * (s + 1.0) / (2.0 * grid.resolution()[kk]);
      }
      const PointLinearData pl = pinv(a.coefficient_matrix_unchecked(mid));
      // Row-major C_P^T (m x n) and Pi (n x n).
      for (int j = 0; j < m_; ++j)
        for (int i = 0; i < n_; ++i)
          cpt_[flat * nn * mm + static_cast<std::size_t>(j) * nn + static_cast<std::size_t>(i)] = pl.C_P(i, j);
      for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c)
          pi_[flat * nn * nn + static_cast<std::size_t>(r) * nn + static_cast<std::size_t>(c)] = pl.Pi(r, c);
    });
  }

  std::size_t index(const std::vector<int>& sums) const {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < sums.size(); ++k) flat += static_cast<std::size_t>(sums[k]) * stride_[k];
    return flat;
  }

  /// Returns the residual |d - Pi d| and the coefficient norm |C_P^T d|.
  std::pair<double, double> evaluate(std::size_t flat, const Eigen::VectorXd& d) const {
    const auto nn = static_cast<std::size_t>(n_);
    const auto mm = static_cast<std::size_t>(m_);
    const double* pi = &pi_[flat * nn * nn];
    const double* cpt = &cpt_[flat * nn * mm];
    double residual_sq = 0.0;
    for (std::size_t r = 0; r < nn; ++r) {
      double proj = 0.0;
      for (std::size_t c = 0; c < nn; ++c) proj += pi[r * nn + c] * d[static_cast<Eigen::Index>(c)];
      const double diff = d[static_cast<Eigen::Index>(r)] - proj;
      residual_sq += diff * diff;
    }
    double weight_sq = 0.0;
    for (std::size_t j = 0; j < mm; ++j) {
      double a = 0.0;
      for (std::size_t c = 0; c < nn; ++c) a += cpt[j * nn + c] * d[static_cast<Eigen::Index>(c)];
      weight_sq += a * a;
    }
    return {std::sqrt(residual_sq), std::sqrt(weight_sq)};
  }

 private:
  int n_;
  int m_;
  std::vector<int> extent_;
  std::vector<std::size_t> stride_;
  std::vector<double> cpt_;
  std::vector<double> pi_;
};

std::vector<std::vector<int>> neighbor_offsets(int n, int radius) {
  std::vector<std::vector<int>> out;
  std::vector<int> o(static_cast<std::size_t>(n), -radius);
  for (;;) {
    if (std::any_of(o.begin(), o.end(), [](int v) { return v != 0; })) out.push_back(o);
    int k = n - 1;
    while (k >= 0 && ++o[static_cast<std::size_t>(k)] > radius) {
      o[static_cast<std::size_t>(k)] = -radius;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

}  // namespace

HorizontalGraph build_graph(const Anisotropy& a, const Grid& grid, int radius, double tau_span) {
  if (radius < 1) throw InvalidArgument("neighbor radius must be at least 1");
  if (!(tau_span > 0.0)) throw InvalidArgument("span tolerance must be positive");
  if (grid.dim() != a.n()) throw DimensionError("grid dimension does not match the anisotropy");
  if (!a.domain().contains(grid.box())) throw DomainError("grid box is not contained in the anisotropy domain");

  const MidpointTable table(a, grid);
  const auto offsets = neighbor_offsets(grid.dim(), radius);
  const int n = grid.dim();

  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency(grid.size());
  parallel_for(grid.size(), [&](std::size_t u) {
    const std::vector<int> iu = grid.unflatten(u);
    const Eigen::VectorXd cu = grid.center(u);
    std::vector<int> iv(iu.size());
    std::vector<int> sums(iu.size());
    Eigen::VectorXd d(n);
    auto& out = adjacency[u];
    for (const auto& o : offsets) {
      bool inside = true;
      for (std::size_t k = 0; k < iu.size(); ++k) {
        iv[k] = iu[k] + o[k];
        sums[k] = iu[k] + iv[k];
        if (iv[k] < 0 || iv[k] >= grid.resolution()[k]) inside = false;
      }
      if (!inside) continue;
      for (int k = 0; k < n; ++k) d[k] = grid.center_coordinate(k, iv[static_cast<std::size_t>(k)]) - cu[k];
      const auto [residual, weight] = table.evaluate(table.index(sums), d);
      if (residual > tau_span * d.norm()) continue;
      if (!(weight > 0.0) || !std::isfinite(weight)) continue;
      out.emplace_back(grid.flatten(iv), weight);
    }
  });

  std::vector<std::size_t> csr_offsets(grid.size() + 1, 0);
  for (std::size_t u = 0; u < grid.size(); ++u) csr_offsets[u + 1] = csr_offsets[u] + adjacency[u].size();
  std::vector<std::size_t> targets(csr_offsets.back());
  std::vector<double> weights(csr_offsets.back());
  for (std::size_t u = 0; u < grid.size(); ++u) {
    std::size_t e = csr_offsets[u];
    for (const auto& [v, w] : adjacency[u]) {
      targets[e] = v;
      weights[e] = w;
      ++e;
    }
  }
  return HorizontalGraph(grid, radius, tau_span, std::move(csr_offsets), std::move(targets), std::move(weights));
}

namespace {

struct SearchResult {
  std::vector<double> dist;
  std::size_t expanded = 0;
};

SearchResult dijkstra(const HorizontalGraph& g, std::size_t source, std::optional<std::size_t> target) {
  SearchResult r;
  r.dist.assign(g.node_count(), std::numeric_limits<double>::infinity());
  std::vector<char> settled(g.node_count(), 0);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  r.dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    ++r.expanded;
    if (target && u == *target) break;
    for (std::size_t e = g.edges_begin(u); e < g.edges_end(u); ++e) {
      const std::size_t v = g.targets()[e];
      const double alt = du + g.weights()[e];
      if (alt < r.dist[v]) {
        r.dist[v] = alt;
        heap.emplace(alt, v);
      }
    }
  }
  return r;
}

}  // namespace

DistanceResult cc_distance(const HorizontalGraph& g, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  DistanceResult out;
  out.from_node = g.grid().cell_of(x);
  out.to_node = g.grid().cell_of(y);
  out.snapped_from = g.grid().center(out.from_node);
  out.snapped_to = g.grid().center(out.to_node);
  const SearchResult r = dijkstra(g, out.from_node, out.to_node);
  out.nodes_expanded = r.expanded;
  const double d = r.dist[out.to_node];
  out.finite = std::isfinite(d);
  out.distance = out.finite ? d : 0.0;
  return out;
}

std::vector<double> distances_from(const HorizontalGraph& g, std::size_t source) {
  if (source >= g.node_count()) throw InvalidArgument("source node out of range");
  return dijkstra(g, source, std::nullopt).dist;
}

}  // namespace anisolag
