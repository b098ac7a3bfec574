#pragma once

#include <Eigen/Dense>
#include <optional>

#include "anisolag/check_report.hpp"

namespace anisolag {

/// Pointwise linear algebra of a coefficient matrix C (m x n).
///
/// C_P is the Moore-Penrose pseudo-inverse, Pi = C_P C projects R^n onto the
/// row space V = im(C^T) along N = ker(C), and Q_perp = I_m - C C_P projects
/// R^m onto im(C)^perp.
struct PointLinearData {
  Eigen::MatrixXd C;
  Eigen::MatrixXd C_P;
  Eigen::MatrixXd Pi;
  Eigen::MatrixXd Q_perp;
  Eigen::VectorXd singular_values;
  int rank = 0;
  double tol = 0.0;
  /// Some singular value lies within a factor 10 of the cutoff.
  bool near_rank_transition = false;
};

/// SVD-based pseudo-inverse. The default cutoff is max(m, n) * eps * sigma_max;
/// singular values at or below it count as zero.
PointLinearData pinv(const Eigen::MatrixXd& C, std::optional<double> tol = std::nullopt);

/// (C^T C + I/h)^{-1} C^T, evaluated as a damped least-squares problem by QR.
/// Converges to the pseudo-inverse as h -> infinity; kept as an independent
/// route for cross-checking pinv().
Eigen::MatrixXd pinv_regularized(const Eigen::MatrixXd& C, double h);

struct SourceSplit {
  Eigen::VectorXd kernel;     // in ker C
  Eigen::VectorXd row_space;  // Pi * xi
};

/// xi = xi_N + xi_V with xi_V = Pi xi.
SourceSplit decompose_source(const PointLinearData& pl, const Eigen::VectorXd& xi);

struct TargetSplit {
  Eigen::VectorXd xi_eta;    // minimum-norm C_P * eta
  Eigen::VectorXd eta_perp;  // eta - C * xi_eta, orthogonal to im C
};

/// eta = C xi_eta + eta_perp with xi_eta pinned to the minimum-norm representative.
TargetSplit decompose_target(const PointLinearData& pl, const Eigen::VectorXd& eta);

/// Max-entry residuals of the four Penrose identities for a candidate W:
/// W C W = W, C W C = C, (W C)^T = W C, (C W)^T = C W.
CheckReport verify_penrose(const Eigen::MatrixXd& C, const Eigen::MatrixXd& W, double tol);

double max_abs(const Eigen::MatrixXd& m);

}  // namespace anisolag
