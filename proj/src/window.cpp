#include "tipi/window.hpp"

namespace tipi {

std::vector<MatrixXd> TipiWindow::jacobians_recent_first() const {
  std::vector<MatrixXd> out;
  out.reserve(jacobians.size());
  for (auto it = jacobians.rbegin(); it != jacobians.rend(); ++it)
    out.push_back(*it);
  return out;
}

TipiWindow build_window(const std::vector<VectorXd>& states,
                        const ControllerParams& params,
                        const ForwardModel& model) {
  require(states.size() >= 2, "build_window: need at least 2 states");
  TipiWindow w;
  w.tau = static_cast<int>(states.size()) - 1;
  w.states = states;

  w.predictions.resize(w.tau + 1);
  w.predictions[0] = states[0];
  for (int j = 1; j <= w.tau; ++j)
    w.predictions[j] = psi(params, model, w.predictions[j - 1]);

  w.deltas.resize(w.tau + 1);
  w.deltas[0] = VectorXd::Zero(states[0].size());
  for (int j = 1; j <= w.tau; ++j) w.deltas[j] = states[j] - w.predictions[j];

  w.residuals.resize(w.tau);
  for (int j = 0; j < w.tau; ++j)
    w.residuals[j] = states[j + 1] - psi(params, model, states[j]);

  w.jacobians.resize(w.tau);
  for (int j = 0; j < w.tau; ++j)
    w.jacobians[j] = loop_jacobian(params, model, states[j]);

  return w;
}

std::vector<VectorXd> propagate_deltas(const TipiWindow& window) {
  require(window.filled(), "propagate_deltas: window not filled");
  const Eigen::Index n = window.states[0].size();
  std::vector<VectorXd> out(window.tau + 1);
  out[0] = VectorXd::Zero(n);
  for (int j = 1; j <= window.tau; ++j) {
    VectorXd d = window.residuals[j - 1]; // k = 0 term, L^(0) = I
    MatrixXd prod = MatrixXd::Identity(n, n);
    for (int k = 1; k < j; ++k) {
      prod = prod * window.jacobians[j - k]; // L(j-1) ... L(j-k)
      d += prod * window.residuals[j - 1 - k];
    }
    out[j] = d;
  }
  return out;
}

} // namespace tipi
