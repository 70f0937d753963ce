#include "tipi/cov_tracker.hpp"

namespace tipi {

CovTracker::CovTracker(Eigen::Index n, double eta, double floor,
                       double init_scale, int refresh_interval)
    : eta_(eta), floor_(floor), refresh_interval_(refresh_interval) {
  require(n >= 1, "CovTracker: dimension must be >= 1");
  require(eta > 0.0 && eta < 1.0, "CovTracker: eta must lie in (0,1)");
  require(floor > 0.0, "CovTracker: floor must be positive");
  const double s = std::max(floor_, init_scale);
  sigma_ = s * MatrixXd::Identity(n, n);
  sigma_inv_ = (1.0 / s) * MatrixXd::Identity(n, n);
}

void CovTracker::update(const VectorXd& delta_s) {
  require(delta_s.size() == sigma_.rows(), "CovTracker: dimension mismatch");
  require_finite(delta_s, "CovTracker.delta_s");

  sigma_ = (1.0 - eta_) * sigma_ + eta_ * delta_s * delta_s.transpose();

  const VectorXd w = sigma_inv_ * delta_s;
  const double q = delta_s.dot(w);
  const double beta = eta_ / (1.0 - eta_ + eta_ * q);
  sigma_inv_ = (sigma_inv_ - beta * w * w.transpose()) / (1.0 - eta_);
  // the update preserves symmetry up to roundoff; re-pin it
  sigma_inv_ = 0.5 * (sigma_inv_ + sigma_inv_.transpose());

  ++updates_;
  if ((refresh_interval_ > 0 && updates_ % refresh_interval_ == 0) ||
      !sigma_inv_.allFinite())
    refresh_inverse();
}

double CovTracker::inverse_residual() const {
  const Eigen::Index n = sigma_.rows();
  return (sigma_ * sigma_inv_ - MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
}

void CovTracker::refresh_inverse() {
  const Eigen::Index n = sigma_.rows();
  Eigen::LDLT<MatrixXd> ldlt(sigma_);
  // a long run of near-zero inputs decays Sigma toward underflow; re-seed
  // at the floor before the inverse degenerates
  if (ldlt.info() != Eigen::Success ||
      (ldlt.vectorD().array() < 1e-300).any()) {
    sigma_ += floor_ * MatrixXd::Identity(n, n);
    ldlt.compute(sigma_);
  }
  sigma_inv_ = ldlt.solve(MatrixXd::Identity(n, n));
  sigma_inv_ = 0.5 * (sigma_inv_ + sigma_inv_.transpose());
}

} // namespace tipi
