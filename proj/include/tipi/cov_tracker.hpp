#ifndef TIPI_COV_TRACKER_HPP
#define TIPI_COV_TRACKER_HPP

#include "tipi/common.hpp"

namespace tipi {

// Exponentially averaged covariance of the propagated error with a tracked
// inverse:
//
//   Sigma <- (1-eta) Sigma + eta d d^T
//   Sigma^-1 updated by the Sherman-Morrison rank-1 identity,
//     beta = eta / (1 - eta + eta d^T Sigma^-1 d)
//     Sigma^-1 <- Sigma^-1/(1-eta) - beta/(1-eta) (Sigma^-1 d)(Sigma^-1 d)^T
//
// so each update costs O(n^2). Every refresh_interval updates the inverse is
// recomputed from Sigma by direct factorization to cap accumulated rank-1
// drift over long runs.
class CovTracker {
public:
  // Sigma starts at max(floor, init_scale) * I.
  CovTracker(Eigen::Index n, double eta, double floor = 1e-8,
             double init_scale = 0.0, int refresh_interval = 1000);

  void update(const VectorXd& delta_s);

  const MatrixXd& sigma() const { return sigma_; }
  const MatrixXd& sigma_inv() const { return sigma_inv_; }
  double eta() const { return eta_; }
  long updates() const { return updates_; }

  // ||Sigma * Sigma^-1 - I||_max, for drift checks.
  double inverse_residual() const;

  // recompute Sigma^-1 from Sigma by LDLT solve
  void refresh_inverse();

private:
  MatrixXd sigma_;
  MatrixXd sigma_inv_;
  double eta_;
  double floor_;
  int refresh_interval_;
  long updates_ = 0;
};

} // namespace tipi

#endif
