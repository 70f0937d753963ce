#ifndef TIPI_GRADIENT_HPP
#define TIPI_GRADIENT_HPP

#include "tipi/cov_tracker.hpp"
#include "tipi/window.hpp"

namespace tipi {

struct ExplorationConfig {
  enum class Mode { neural_tau2, general_tau, onedim_deterministic };

  double epsilon = 0.01; // parameter update rate
  int tau = 2;           // window length
  double alpha = 1.0;    // sense parameter, scales the channel rates gamma
  double eta = 0.05;     // covariance averaging rate
  double eta_phi = 0.0;  // forward-model learning rate (0 = model frozen)
  Mode mode = Mode::neural_tau2;
  bool fixed_c = false;  // freeze C, adapt only the bias h

  void validate() const;
};

// Per-step byproducts of the tau=2 rule, kept for diagnostics and tests.
struct GradientAux {
  VectorXd delta_u;  // Sigma^-1 delta_s_t
  VectorXd delta_mu; // G' V^T delta_u
  VectorXd gamma;    // channel rates
};

struct GradResult {
  MatrixXd dC;
  VectorXd dh;
  GradientAux aux;
};

// Channel rates gamma_i = alpha * (-g''/(g' g))(z_i) * (C delta_s)_i * delta_mu_i.
// The prefactor is 2 for tanh.
VectorXd gamma_for_activation(const Activation& activation, const VectorXd& z,
                              const VectorXd& C_delta_s,
                              const VectorXd& delta_mu, double alpha);

// Two-step-window parameter update:
//
//   dC_ij = eps (delta_mu_i delta_s_prev_j - gamma_i a_i s_prev_j)
//   dh_i  = -eps gamma_i a_i
//
// with delta_mu = G' V^T Sigma^-1 delta_s_t and everything except delta_s_t
// evaluated at s_prev (the state the loop Jacobian is linearized at). Equal
// to eps * delta_u^T (dL/dtheta) delta_s_prev from the general rule.
GradResult grad_tau2(const ControllerParams& params, const ForwardModel& model,
                     const VectorXd& s_prev, const VectorXd& delta_s_t,
                     const VectorXd& delta_s_prev, const MatrixXd& sigma_inv,
                     const ExplorationConfig& config);

// General window: one-shot gradient
//
//   dtheta = eps sum_{l=1}^{tau-1} delta_u(l)^T dL(t-l)/dtheta delta_s_{t-l},
//   delta_u(l) = (L(t-1)...L(t-l+1))^T Sigma^-1 delta_s_t,
//
// each lag reusing the tau=2 algebra with its own delta_u. Reduces to
// grad_tau2 exactly for tau = 2.
GradResult grad_general(const TipiWindow& window, const MatrixXd& sigma_inv,
                        const ControllerParams& params, const ForwardModel& model,
                        const ExplorationConfig& config);

// Noise-averaged flavor of the same rule: the realization outer products
// delta_s_{t-l} delta_s_t^T are replaced by their white-noise expectations
// built from the window Jacobians and D. With sigma_inv taken from
// sigma_from_jacobians this is the exact gradient of 1/2 log|Sigma(theta)|
// on the frozen linearization; the one-shot rule above equals it in
// expectation over noise realizations.
GradResult grad_general_averaged(const TipiWindow& window, const MatrixXd& D,
                                 const MatrixXd& sigma_inv,
                                 const ControllerParams& params,
                                 const ForwardModel& model,
                                 const ExplorationConfig& config);

} // namespace tipi

#endif
