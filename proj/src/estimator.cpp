#include "tipi/estimator.hpp"

#include <cmath>

#include "tipi/rng.hpp"

namespace tipi {

namespace {

void require_square_match(const std::vector<MatrixXd>& L_seq, const MatrixXd& D,
                          int tau, const char* who) {
  require(tau >= 1, std::string(who) + ": tau must be >= 1");
  require(D.rows() == D.cols(), std::string(who) + ": D must be square");
  require(static_cast<int>(L_seq.size()) >= tau - 1,
          std::string(who) + ": need at least tau-1 Jacobians");
  for (const auto& L : L_seq)
    require(L.rows() == D.rows() && L.cols() == D.cols(),
            std::string(who) + ": Jacobian/D dimension mismatch");
}

// D^(1/2) and D^(-1/2) through the symmetric eigendecomposition.
void spd_sqrt(const MatrixXd& D, MatrixXd& root, MatrixXd& inv_root,
              const char* who) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(D);
  require(es.info() == Eigen::Success, std::string(who) + ": eigensolver failed");
  const VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0)
    throw NumericError(std::string(who) + ": D is not positive definite");
  const VectorXd sq = ev.array().sqrt();
  root = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().transpose();
  inv_root = es.eigenvectors() * sq.cwiseInverse().asDiagonal() *
             es.eigenvectors().transpose();
}

} // namespace

void NoiseModel::validate() const {
  require(D.rows() == D.cols(), "NoiseModel: D must be square");
  const double scale = std::max(1.0, D.cwiseAbs().maxCoeff());
  require((D - D.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
          "NoiseModel: D must be symmetric");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(D, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() > 0.0,
          "NoiseModel: D must be positive definite");
  require(lambda >= 0.0, "NoiseModel: lambda must be nonnegative");
}

double logdet_spd(const MatrixXd& m, const std::string& what) {
  require(m.rows() == m.cols(), what + ": must be square");
  Eigen::LDLT<MatrixXd> ldlt(m);
  if (ldlt.info() != Eigen::Success)
    throw NumericError(what + ": LDLT factorization failed");
  double acc = 0.0;
  const VectorXd d = ldlt.vectorD();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d[i] <= 0.0)
      throw NumericError(what + ": not positive definite (pivot " +
                         std::to_string(d[i]) + ")");
    acc += std::log(d[i]);
  }
  return acc;
}

MatrixXd sigma_from_jacobians(const std::vector<MatrixXd>& L_seq,
                              const MatrixXd& D, int tau) {
  require_square_match(L_seq, D, tau, "sigma_from_jacobians");
  logdet_spd(D, "sigma_from_jacobians: D"); // SPD gate
  const Eigen::Index n = D.rows();
  MatrixXd sigma = D;
  MatrixXd prod = MatrixXd::Identity(n, n);
  for (int k = 1; k < tau; ++k) {
    prod = prod * L_seq[k - 1];
    sigma += prod * D * prod.transpose();
  }
  // enforce exact symmetry against roundoff drift
  sigma = 0.5 * (sigma + sigma.transpose());
  return sigma;
}

double tipi_gaussian(const MatrixXd& Sigma, const MatrixXd& D) {
  require(Sigma.rows() == Sigma.cols() && D.rows() == D.cols() &&
              Sigma.rows() == D.rows(),
          "tipi_gaussian: Sigma/D dimension mismatch");
  return 0.5 * logdet_spd(Sigma, "tipi_gaussian: Sigma") -
         0.5 * logdet_spd(D, "tipi_gaussian: D");
}

double whitened_tipi(const std::vector<MatrixXd>& L_seq, const MatrixXd& D_hat,
                     int tau) {
  require_square_match(L_seq, D_hat, tau, "whitened_tipi");
  const Eigen::Index n = D_hat.rows();
  MatrixXd root, inv_root;
  spd_sqrt(D_hat, root, inv_root, "whitened_tipi");
  MatrixXd acc = MatrixXd::Identity(n, n);
  MatrixXd prod = MatrixXd::Identity(n, n);
  for (int k = 1; k < tau; ++k) {
    prod = prod * (inv_root * L_seq[k - 1] * root);
    acc += prod * prod.transpose();
  }
  acc = 0.5 * (acc + acc.transpose());
  return 0.5 * logdet_spd(acc, "whitened_tipi: accumulated covariance");
}

double tipi_mc_oracle(const std::vector<MatrixXd>& L_seq, const MatrixXd& D,
                      int tau, std::int64_t n_samples, std::uint64_t seed,
                      double* standard_error) {
  require_square_match(L_seq, D, tau, "tipi_mc_oracle");
  require(n_samples >= 10000, "tipi_mc_oracle: need at least 1e4 samples");
  const Eigen::Index n = D.rows();

  MatrixXd root, inv_root;
  spd_sqrt(D, root, inv_root, "tipi_mc_oracle");

  GaussianRng rng(seed);
  const int n_batches = 20;
  const std::int64_t per_batch = n_samples / n_batches;
  VectorXd batch_vals(n_batches);

  for (int b = 0; b < n_batches; ++b) {
    // columns are independent realizations propagated together
    MatrixXd noise_cov_acc = MatrixXd::Zero(n, n);
    MatrixXd delta = MatrixXd::Zero(n, per_batch);
    // step through the window: delta <- L(t') delta + xi(t')
    // jacobians applied oldest first: L_seq[tau-2], ..., L_seq[0]
    for (int stepi = 0; stepi < tau; ++stepi) {
      MatrixXd xi(n, per_batch);
      for (std::int64_t c = 0; c < per_batch; ++c)
        xi.col(c) = rng.gaussian_vector(n);
      xi = root * xi;
      noise_cov_acc += xi * xi.transpose();
      if (stepi == 0) {
        delta = xi;
      } else {
        const MatrixXd& L = L_seq[tau - 1 - stepi];
        delta = L * delta + xi;
      }
    }
    const MatrixXd sigma_hat =
        delta * delta.transpose() / static_cast<double>(per_batch);
    const MatrixXd d_hat =
        noise_cov_acc / static_cast<double>(per_batch * tau);
    batch_vals[b] = 0.5 * logdet_spd(sigma_hat, "tipi_mc_oracle: Sigma_hat") -
                    0.5 * logdet_spd(d_hat, "tipi_mc_oracle: D_hat");
  }

  const double mean = batch_vals.mean();
  if (standard_error) {
    const double var =
        (batch_vals.array() - mean).square().sum() / (n_batches - 1);
    *standard_error = std::sqrt(var / n_batches);
  }
  return mean;
}

MatrixXd linear_stationary_sigma(const MatrixXd& L, const MatrixXd& D, int tau) {
  require(L.rows() == L.cols(), "linear_stationary_sigma: L must be square");
  std::vector<MatrixXd> seq; // constant operator, reuse the window sum
  const Eigen::Index n = D.rows();
  require(L.rows() == n, "linear_stationary_sigma: L/D dimension mismatch");
  logdet_spd(D, "linear_stationary_sigma: D");
  MatrixXd sigma = D;
  MatrixXd prod = MatrixXd::Identity(n, n);
  const double bound = 1e9 * std::max(1.0, D.norm());
  for (int k = 1; k < tau; ++k) {
    prod = prod * L;
    sigma += prod * D * prod.transpose();
    if (!sigma.allFinite() || sigma.norm() > bound)
      throw NumericError(
          "linear_stationary_sigma: geometric sum diverges (spectral radius "
          ">= 1?) at k=" +
          std::to_string(k));
  }
  return 0.5 * (sigma + sigma.transpose());
}

} // namespace tipi
