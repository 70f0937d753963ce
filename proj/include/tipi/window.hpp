#ifndef TIPI_WINDOW_HPP
#define TIPI_WINDOW_HPP

#include <vector>

#include "tipi/sml.hpp"

namespace tipi {

// Rolling window over the last tau+1 sensor states with everything the
// estimator and the parameter dynamics need, all computed against one
// parameter snapshot:
//
//   states[j]       s at window time j          (j = 0..tau, j=tau is "now")
//   predictions[j]  psi^j applied to states[0]
//   deltas[j]       states[j] - predictions[j]; deltas[0] = 0 by construction
//   residuals[j]    one-step error states[j+1] - psi(states[j]), j = 0..tau-1
//   jacobians[j]    loop Jacobian at states[j],  j = 0..tau-1
//
// The deltas obey deltas[j] ~= jacobians[j-1] * deltas[j-1] + residuals[j-1]
// up to second order in the residuals (exactly, for a linear loop map).
struct TipiWindow {
  int tau = 2;
  std::vector<VectorXd> states;
  std::vector<VectorXd> predictions;
  std::vector<VectorXd> deltas;
  std::vector<VectorXd> residuals;
  std::vector<MatrixXd> jacobians;

  bool filled() const {
    return tau >= 1 && static_cast<int>(states.size()) == tau + 1;
  }
  const VectorXd& delta_now() const { return deltas.back(); }
  const VectorXd& delta_prev() const { return deltas[deltas.size() - 2]; }

  // jacobians ordered most recent first: [L(now-1), L(now-2), ...],
  // the order expected by sigma_from_jacobians / whitened_tipi.
  std::vector<MatrixXd> jacobians_recent_first() const;
};

// Evaluates predictions, deltas, residuals and Jacobians for the given state
// history (oldest first, exactly tau+1 entries) under one parameter snapshot.
TipiWindow build_window(const std::vector<VectorXd>& states,
                        const ControllerParams& params,
                        const ForwardModel& model);

// Closed-form propagation: delta[j] = sum_{k=0}^{j-1} L^(k) residual[j-1-k]
// with L^(k) = jacobians[j-1]...jacobians[j-k] and L^(0) = I. Matches the
// directly measured deltas exactly when the loop map is linear.
std::vector<VectorXd> propagate_deltas(const TipiWindow& window);

} // namespace tipi

#endif
