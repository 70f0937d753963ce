#ifndef TIPI_SML_HPP
#define TIPI_SML_HPP

#include "tipi/activation.hpp"
#include "tipi/common.hpp"

namespace tipi {

// Single-layer neural controller a = g(C s + h).
// C is m x n (motor rows, sensor columns), h is length m.
struct ControllerParams {
  MatrixXd C;
  VectorXd h;
  Activation activation = Activation::make_tanh();

  Eigen::Index n_sensors() const { return C.cols(); }
  Eigen::Index n_motors() const { return C.rows(); }
  void validate() const;
};

// Linear one-step predictor of the next sensor values,
// phi(s, a) = V a + T s + b, adapted online by gradient descent on |xi|^2.
struct ForwardModel {
  MatrixXd V; // n x m
  MatrixXd T; // n x n
  VectorXd b; // n
  double eta_phi = 0.1;

  Eigen::Index n_sensors() const { return V.rows(); }
  Eigen::Index n_motors() const { return V.cols(); }
  void validate() const;

  static ForwardModel identity_loop(Eigen::Index n); // V=I, T=0, b=0
};

struct LoopState {
  VectorXd s;
  VectorXd a;
  long t = 0;
};

VectorXd controller_forward(const ControllerParams& params, const VectorXd& s);

VectorXd model_predict(const ForwardModel& model, const VectorXd& s,
                       const VectorXd& a);

// Residual against the pre-update prediction, then
// V += eta xi a^T, T += eta xi s^T, b += eta xi. Returns xi.
VectorXd model_update(ForwardModel& model, const VectorXd& s, const VectorXd& a,
                      const VectorXd& s_observed);

// psi(s) = phi(s, K(s)) = V g(C s + h) + T s + b
VectorXd psi(const ControllerParams& params, const ForwardModel& model,
             const VectorXd& s);

// k-fold composition of psi; k = 0 returns s unchanged.
VectorXd psi_iterate(const ControllerParams& params, const ForwardModel& model,
                     const VectorXd& s, long k);

// Jacobian of psi at s: L = V G'(z) C + T with z = C s + h.
MatrixXd loop_jacobian(const ControllerParams& params, const ForwardModel& model,
                       const VectorXd& s);

} // namespace tipi

#endif
