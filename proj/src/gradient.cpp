#include "tipi/gradient.hpp"

#include <cmath>

namespace tipi {

void ExplorationConfig::validate() const {
  require(std::isfinite(epsilon) && epsilon >= 0.0,
          "ExplorationConfig: epsilon must be finite and >= 0");
  require(tau >= 2, "ExplorationConfig: tau must be >= 2 (tau=1 carries no "
                    "learning signal)");
  require(alpha >= 0.0, "ExplorationConfig: alpha must be >= 0");
  require(eta > 0.0 && eta < 1.0, "ExplorationConfig: eta must lie in (0,1)");
  require(eta_phi >= 0.0, "ExplorationConfig: eta_phi must be >= 0");
}

VectorXd gamma_for_activation(const Activation& activation, const VectorXd& z,
                              const VectorXd& C_delta_s,
                              const VectorXd& delta_mu, double alpha) {
  require(z.size() == C_delta_s.size() && z.size() == delta_mu.size(),
          "gamma_for_activation: dimension mismatch");
  VectorXd gamma(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i)
    gamma[i] = alpha * activation.gamma_prefactor(z[i]) * C_delta_s[i] *
               delta_mu[i];
  return gamma;
}

namespace {

// Shared per-lag core: contributions of one window lag given its auxiliary
// vector delta_u (already transported to the lag by the Jacobian products).
void accumulate_lag(const ControllerParams& params, const ForwardModel& model,
                    const VectorXd& s_lag, const VectorXd& delta_s_lag,
                    const VectorXd& delta_u, double alpha, MatrixXd& dC,
                    VectorXd& dh, GradientAux* aux) {
  const VectorXd z = params.C * s_lag + params.h;
  const VectorXd a = params.activation.apply(z);
  const VectorXd gp = params.activation.apply_dg(z);
  const VectorXd delta_mu = gp.asDiagonal() * (model.V.transpose() * delta_u);
  const VectorXd gamma =
      gamma_for_activation(params.activation, z, params.C * delta_s_lag,
                           delta_mu, alpha);
  dC += delta_mu * delta_s_lag.transpose() -
        (gamma.cwiseProduct(a)) * s_lag.transpose();
  dh -= gamma.cwiseProduct(a);
  if (aux) {
    aux->delta_mu = delta_mu;
    aux->gamma = gamma;
  }
}

} // namespace

GradResult grad_tau2(const ControllerParams& params, const ForwardModel& model,
                     const VectorXd& s_prev, const VectorXd& delta_s_t,
                     const VectorXd& delta_s_prev, const MatrixXd& sigma_inv,
                     const ExplorationConfig& config) {
  params.validate();
  require(sigma_inv.rows() == delta_s_t.size() &&
              sigma_inv.cols() == delta_s_t.size(),
          "grad_tau2: Sigma^-1 dimension mismatch");
  require_finite(sigma_inv, "grad_tau2: Sigma^-1");

  GradResult r;
  r.dC = MatrixXd::Zero(params.C.rows(), params.C.cols());
  r.dh = VectorXd::Zero(params.h.size());
  r.aux.delta_u = sigma_inv * delta_s_t;
  accumulate_lag(params, model, s_prev, delta_s_prev, r.aux.delta_u,
                 config.alpha, r.dC, r.dh, &r.aux);
  r.dC *= config.epsilon;
  r.dh *= config.epsilon;
  return r;
}

GradResult grad_general(const TipiWindow& window, const MatrixXd& sigma_inv,
                        const ControllerParams& params, const ForwardModel& model,
                        const ExplorationConfig& config) {
  require(window.filled(), "grad_general: window not filled");
  require(window.tau >= 2, "grad_general: tau must be >= 2");
  const int tau = window.tau;

  GradResult r;
  r.dC = MatrixXd::Zero(params.C.rows(), params.C.cols());
  r.dh = VectorXd::Zero(params.h.size());

  const VectorXd& delta_now = window.delta_now();
  const VectorXd base_u = sigma_inv * delta_now;
  r.aux.delta_u = base_u;

  const Eigen::Index n = delta_now.size();
  MatrixXd chain = MatrixXd::Identity(n, n); // L(t-1) ... L(t-l+1)
  for (int l = 1; l <= tau - 1; ++l) {
    if (l > 1) chain = chain * window.jacobians[tau - l + 1];
    const VectorXd delta_u_l = chain.transpose() * base_u;
    accumulate_lag(params, model, window.states[tau - l],
                   window.deltas[tau - l], delta_u_l, config.alpha, r.dC, r.dh,
                   l == 1 ? &r.aux : nullptr);
  }
  r.dC *= config.epsilon;
  r.dh *= config.epsilon;
  return r;
}

GradResult grad_general_averaged(const TipiWindow& window, const MatrixXd& D,
                                 const MatrixXd& sigma_inv,
                                 const ControllerParams& params,
                                 const ForwardModel& model,
                                 const ExplorationConfig& config) {
  require(window.filled(), "grad_general_averaged: window not filled");
  const int tau = window.tau;
  const Eigen::Index n = window.states[0].size();

  GradResult r;
  r.dC = MatrixXd::Zero(params.C.rows(), params.C.cols());
  r.dh = VectorXd::Zero(params.h.size());

  // products of recent Jacobians: recent[k] = L(t-1) ... L(t-k), recent[0] = I
  std::vector<MatrixXd> recent(tau);
  recent[0] = MatrixXd::Identity(n, n);
  for (int k = 1; k < tau; ++k)
    recent[k] = recent[k - 1] * window.jacobians[tau - k];

  for (int l = 1; l <= tau - 1; ++l) {
    // E[delta_s_t delta_s_{t-l}^T] =
    //   sum_{k=0}^{tau-1-l} L^(k+l)(t-1) D (L^(k)(t-l-1))^T
    MatrixXd w_t(n, n);
    w_t.setZero();
    MatrixXd lag_prod = MatrixXd::Identity(n, n); // L^(k)(t-l-1)
    for (int k = 0; k <= tau - 1 - l; ++k) {
      if (k > 0) lag_prod = lag_prod * window.jacobians[tau - l - k];
      w_t += recent[k + l] * D * lag_prod.transpose();
    }
    const MatrixXd m_t = recent[l - 1].transpose() * sigma_inv * w_t; // M_l^T
    const MatrixXd m_l = m_t.transpose();

    const VectorXd& s_lag = window.states[tau - l];
    const VectorXd z = params.C * s_lag + params.h;
    const VectorXd a = params.activation.apply(z);
    const VectorXd gp = params.activation.apply_dg(z);

    r.dC += gp.asDiagonal() * (model.V.transpose() * m_t);
    const MatrixXd x = params.C * m_l * model.V;
    VectorXd gamma_avg(params.h.size());
    for (Eigen::Index i = 0; i < gamma_avg.size(); ++i)
      gamma_avg[i] = config.alpha * params.activation.gamma_prefactor(z[i]) *
                     gp[i] * x(i, i);
    r.dC -= (gamma_avg.cwiseProduct(a)) * s_lag.transpose();
    r.dh -= gamma_avg.cwiseProduct(a);
  }
  r.dC *= config.epsilon;
  r.dh *= config.epsilon;
  return r;
}

} // namespace tipi
