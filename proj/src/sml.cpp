#include "tipi/sml.hpp"

namespace tipi {

void ControllerParams::validate() const {
  require(C.rows() == h.size(),
          "ControllerParams: C has " + std::to_string(C.rows()) +
              " rows but h has " + std::to_string(h.size()) + " entries");
  require_finite(C, "ControllerParams.C");
  require_finite(h, "ControllerParams.h");
}

void ForwardModel::validate() const {
  require(T.rows() == T.cols(), "ForwardModel: T must be square");
  require(V.rows() == T.rows() && V.rows() == b.size(),
          "ForwardModel: inconsistent V/T/b dimensions");
  require(eta_phi > 0.0, "ForwardModel: eta_phi must be positive");
  require_finite(V, "ForwardModel.V");
  require_finite(T, "ForwardModel.T");
  require_finite(b, "ForwardModel.b");
}

ForwardModel ForwardModel::identity_loop(Eigen::Index n) {
  ForwardModel m;
  m.V = MatrixXd::Identity(n, n);
  m.T = MatrixXd::Zero(n, n);
  m.b = VectorXd::Zero(n);
  return m;
}

VectorXd controller_forward(const ControllerParams& params, const VectorXd& s) {
  require(s.size() == params.C.cols(),
          "controller_forward: sensor vector has " + std::to_string(s.size()) +
              " entries, expected " + std::to_string(params.C.cols()));
  return params.activation.apply(params.C * s + params.h);
}

VectorXd model_predict(const ForwardModel& model, const VectorXd& s,
                       const VectorXd& a) {
  require(s.size() == model.T.cols(), "model_predict: sensor dim mismatch");
  require(a.size() == model.V.cols(), "model_predict: action dim mismatch");
  return model.V * a + model.T * s + model.b;
}

VectorXd model_update(ForwardModel& model, const VectorXd& s, const VectorXd& a,
                      const VectorXd& s_observed) {
  require_finite(s, "model_update.s");
  require_finite(a, "model_update.a");
  require_finite(s_observed, "model_update.s_observed");
  require(s_observed.size() == model.V.rows(),
          "model_update: observed sensor dim mismatch");
  const VectorXd xi = s_observed - model_predict(model, s, a);
  model.V += model.eta_phi * xi * a.transpose();
  model.T += model.eta_phi * xi * s.transpose();
  model.b += model.eta_phi * xi;
  return xi;
}

VectorXd psi(const ControllerParams& params, const ForwardModel& model,
             const VectorXd& s) {
  return model_predict(model, s, controller_forward(params, s));
}

VectorXd psi_iterate(const ControllerParams& params, const ForwardModel& model,
                     const VectorXd& s, long k) {
  require(k >= 0, "psi_iterate: k must be nonnegative");
  VectorXd x = s;
  for (long i = 0; i < k; ++i) x = psi(params, model, x);
  return x;
}

MatrixXd loop_jacobian(const ControllerParams& params, const ForwardModel& model,
                       const VectorXd& s) {
  require(s.size() == params.C.cols(), "loop_jacobian: sensor dim mismatch");
  const VectorXd z = params.C * s + params.h;
  const VectorXd gp = params.activation.apply_dg(z);
  return model.V * gp.asDiagonal() * params.C + model.T;
}

} // namespace tipi
