#ifndef TIPI_ESTIMATOR_HPP
#define TIPI_ESTIMATOR_HPP

#include <cstdint>
#include <vector>

#include "tipi/common.hpp"

namespace tipi {

// Covariance shape of the one-step prediction error, with an overall
// amplitude scale lambda split off (residual ~ lambda * N(0, D)).
struct NoiseModel {
  MatrixXd D;
  double lambda = 1.0;
  void validate() const; // symmetric to 1e-12, eigenvalues > 0
};

// log|M| of a symmetric positive-definite matrix, accumulated in log space
// via LDLT. Throws NumericError if M is not SPD.
double logdet_spd(const MatrixXd& m, const std::string& what = "matrix");

// Propagated-error covariance for white noise over a window of length tau:
//
//   Sigma = sum_{k=0}^{tau-1} L^(k) D (L^(k))^T,
//   L^(k) = L_seq[0] L_seq[1] ... L_seq[k-1],  L^(0) = I.
//
// L_seq is ordered most recent first; tau-1 entries are consumed.
MatrixXd sigma_from_jacobians(const std::vector<MatrixXd>& L_seq,
                              const MatrixXd& D, int tau);

// Mutual information (nats) between the propagated error now and one step
// ago under the Gaussian closed form: 1/2 log|Sigma| - 1/2 log|D|.
// Nonnegative whenever Sigma - D is positive semidefinite, which holds for
// any Sigma produced by sigma_from_jacobians; zero iff Sigma = D.
double tipi_gaussian(const MatrixXd& Sigma, const MatrixXd& D);

// Noise-amplitude-free form: with Lhat = D^(-1/2) L D^(1/2),
//
//   I_tau = 1/2 log| sum_k Lhat^(k) (Lhat^(k))^T |.
//
// Equals tipi_gaussian for the same L_seq and any amplitude lambda > 0
// (scaling D_hat by lambda^2 cancels), and stays finite as lambda -> 0.
double whitened_tipi(const std::vector<MatrixXd>& L_seq, const MatrixXd& D_hat,
                     int tau);

// Monte-Carlo estimate of the same quantity: samples noise sequences from
// N(0, D), propagates them through the linearized dynamics and computes
// 1/2 log|Sigma_hat| - 1/2 log|D_hat| from sample covariances.
// standard_error (optional out) is estimated by batching.
double tipi_mc_oracle(const std::vector<MatrixXd>& L_seq, const MatrixXd& D,
                      int tau, std::int64_t n_samples, std::uint64_t seed,
                      double* standard_error = nullptr);

// Stationary-window covariance of a fixed linear map: the geometric sum
// sum_{k=0}^{tau-1} L^k D (L^k)^T. For normal L and D = I this converges to
// (I - L L^T)^{-1} as tau grows (contraction required). Throws NumericError
// if the partial products diverge (spectral radius >= 1 with large tau).
MatrixXd linear_stationary_sigma(const MatrixXd& L, const MatrixXd& D, int tau);

} // namespace tipi

#endif
