#include "anisolag/pseudoinverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "anisolag/error.hpp"

namespace anisolag {

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

PointLinearData pinv(const Eigen::MatrixXd& C, std::optional<double> tol) {
  if (C.rows() == 0 || C.cols() == 0) throw DimensionError("pinv needs a non-empty matrix");
  if (!C.allFinite()) throw NonFiniteError("pinv input has non-finite entries");

  const Eigen::Index m = C.rows();
  const Eigen::Index n = C.cols();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv[0] : 0.0;

  PointLinearData out;
  out.C = C;
  out.singular_values = sv;
  out.tol = tol.value_or(static_cast<double>(std::max(m, n)) * std::numeric_limits<double>::epsilon() * sigma_max);
  if (out.tol < 0.0) throw InvalidArgument("rank tolerance must be non-negative");

  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv[k] > out.tol) ++rank;
    if (sigma_max > 0.0 && sv[k] >= out.tol / 10.0 && sv[k] <= out.tol * 10.0) out.near_rank_transition = true;
  }
  out.rank = rank;

  const auto U = svd.matrixU().leftCols(rank);
  const auto V = svd.matrixV().leftCols(rank);
  const Eigen::VectorXd inv = sv.head(rank).cwiseInverse();
  out.C_P = V * inv.asDiagonal() * U.transpose();
  out.Pi = V * V.transpose();
  out.Q_perp = Eigen::MatrixXd::Identity(m, m) - U * U.transpose();
  if (rank == 0) {
    out.C_P = Eigen::MatrixXd::Zero(n, m);
    out.Pi = Eigen::MatrixXd::Zero(n, n);
  }
  return out;
}

Eigen::MatrixXd pinv_regularized(const Eigen::MatrixXd& C, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("regularization parameter h must be positive and finite");
  if (!C.allFinite()) throw NonFiniteError("pinv_regularized input has non-finite entries");
  const Eigen::Index m = C.rows();
  const Eigen::Index n = C.cols();
  // min |C z - e|^2 + |z|^2 / h  <=>  stacked least squares [C; I/sqrt(h)] z = [e; 0]
  Eigen::MatrixXd A(m + n, n);
  A.topRows(m) = C;
  A.bottomRows(n) = Eigen::MatrixXd::Identity(n, n) / std::sqrt(h);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m + n, m);
  rhs.topRows(m) = Eigen::MatrixXd::Identity(m, m);
  return A.householderQr().solve(rhs);
}

SourceSplit decompose_source(const PointLinearData& pl, const Eigen::VectorXd& xi) {
  if (xi.size() != pl.Pi.cols()) throw DimensionError("source vector has dimension " + std::to_string(xi.size()) +
                                                      ", expected " + std::to_string(pl.Pi.cols()));
  SourceSplit s;
  s.row_space = pl.Pi * xi;
  s.kernel = xi - s.row_space;
  return s;
}

TargetSplit decompose_target(const PointLinearData& pl, const Eigen::VectorXd& eta) {
  if (eta.size() != pl.C.rows()) throw DimensionError("target vector has dimension " + std::to_string(eta.size()) +
                                                       ", expected " + std::to_string(pl.C.rows()));
  TargetSplit s;
  s.xi_eta = pl.C_P * eta;
  s.eta_perp = eta - pl.C * s.xi_eta;
  return s;
}

CheckReport verify_penrose(const Eigen::MatrixXd& C, const Eigen::MatrixXd& W, double tol) {
  if (W.rows() != C.cols() || W.cols() != C.rows())
    throw DimensionError("candidate pseudo-inverse must be " + std::to_string(C.cols()) + "x" + std::to_string(C.rows()));
  const Eigen::MatrixXd CW = C * W;
  const Eigen::MatrixXd WC = W * C;
  CheckReport r;
  r.check = "penrose";
  r.residuals = {
      {"wcw_eq_w", max_abs(W * C * W - W)},
      {"cwc_eq_c", max_abs(C * W * C - C)},
      {"wc_symmetric", max_abs(WC - WC.transpose())},
      {"cw_symmetric", max_abs(CW - CW.transpose())},
  };
  r.samples = 1;
  for (const auto& [name, value] : r.residuals) r.max_residual = std::max(r.max_residual, value);
  r.pass = r.max_residual <= tol;
  return r;
}

}  // namespace anisolag
