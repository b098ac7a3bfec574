#include "anisolag/zigzag.hpp"

#include <algorithm>
#include <cmath>

#include "anisolag/error.hpp"

namespace anisolag {

PiecewiseAffineFn::PiecewiseAffineFn(Box domain, Eigen::VectorXd direction, std::vector<AffinePiece> pieces)
    : domain_(std::move(domain)), direction_(std::move(direction)), pieces_(std::move(pieces)) {
  if (direction_.size() != domain_.dim()) throw DimensionError("laminate direction does not match the box dimension");
  if (pieces_.empty()) throw InvalidArgument("piecewise affine function needs at least one piece");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].gradient.size() != domain_.dim()) throw DimensionError("piece gradient has the wrong dimension");
    if (!(pieces_[i].lo < pieces_[i].hi)) throw InvalidArgument("empty slab");
    if (i > 0 && pieces_[i].lo != pieces_[i - 1].hi) throw InvalidArgument("slabs must be sorted and contiguous");
  }
}

std::size_t PiecewiseAffineFn::piece_index(const Eigen::VectorXd& y) const {
  if (y.size() != domain_.dim()) throw DimensionError("point has the wrong dimension");
  const double s = direction_.dot(y);
  const auto it = std::upper_bound(pieces_.begin(), pieces_.end(), s,
                                   [](double value, const AffinePiece& p) { return value < p.lo; });
  if (it == pieces_.begin()) return 0;
  return static_cast<std::size_t>(it - pieces_.begin()) - 1;
}

double PiecewiseAffineFn::operator()(const Eigen::VectorXd& y) const {
  const AffinePiece& p = pieces_[piece_index(y)];
  return p.offset + p.gradient.dot(y);
}

const Eigen::VectorXd& PiecewiseAffineFn::gradient(const Eigen::VectorXd& y) const {
  return pieces_[piece_index(y)].gradient;
}

double PiecewiseAffineFn::family_fraction(int family, int per_axis) const {
  if (per_axis < 1) throw InvalidArgument("family_fraction needs at least one point per axis");
  const int n = domain_.dim();
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  Eigen::VectorXd y(n);
  std::size_t hits = 0;
  std::size_t total = 0;
  for (;;) {
    for (int k = 0; k < n; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      y[k] = domain_.lo[kk] + domain_.width(k) * (2.0 * idx[kk] + 1.0) / (2.0 * per_axis);
    }
    if (pieces_[piece_index(y)].family == family) ++hits;
    ++total;
    int k = n - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == per_axis) {
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

double zigzag_bound(const Eigen::VectorXd& xi1, const Eigen::VectorXd& xi2, double t, int h) {
  return t * (1.0 - t) * (xi2 - xi1).norm() / h;
}

PiecewiseAffineFn zigzag_sequence(const Eigen::VectorXd& xi1, const Eigen::VectorXd& xi2, double t, int h,
                                  const Box& box) {
  if (xi1.size() != box.dim() || xi2.size() != box.dim()) throw DimensionError("gradients must match the box dimension");
  if (!(t > 0.0 && t < 1.0)) throw InvalidArgument("zig-zag needs 0 < t < 1");
  if (h < 1) throw InvalidArgument("zig-zag needs h >= 1");
  const double gap = (xi2 - xi1).norm();
  if (!(gap > 0.0)) throw InvalidArgument("zig-zag needs xi1 != xi2");
  const Eigen::VectorXd xi0 = (xi2 - xi1) / gap;

  // Range of <xi0, y> over the box.
  double s_min = 0.0;
  double s_max = 0.0;
  for (int k = 0; k < box.dim(); ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const double a = xi0[k] * box.lo[kk];
    const double b = xi0[k] * box.hi[kk];
    s_min += std::min(a, b);
    s_max += std::max(a, b);
  }
  const long k_first = static_cast<long>(std::floor(s_min * h)) + 1;
  const long k_last = static_cast<long>(std::floor(s_max * h)) + 1;

  std::vector<AffinePiece> pieces;
  pieces.reserve(static_cast<std::size_t>(2 * (k_last - k_first + 1)));
  const double hd = static_cast<double>(h);
  for (long k = k_first; k <= k_last; ++k) {
    const double kd = static_cast<double>(k);
    const double start = (kd - 1.0) / hd;
    const double split = (kd - 1.0 + t) / hd;
    const double end = kd / hd;
    pieces.push_back(AffinePiece{start, split, xi1, (1.0 - t) * (kd - 1.0) / hd * gap, 1});
    pieces.push_back(AffinePiece{split, end, xi2, -t * kd / hd * gap, 2});
  }
  return PiecewiseAffineFn(box, xi0, std::move(pieces));
}

}  // namespace anisolag
