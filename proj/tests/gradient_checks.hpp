// Frozen-linearization instances and finite-difference machinery shared by
// the gradient unit tests and the acceptance suite.
#ifndef TIPI_TESTS_GRADIENT_CHECKS_HPP
#define TIPI_TESTS_GRADIENT_CHECKS_HPP

#include "oracles.hpp"
#include "tipi/estimator.hpp"
#include "tipi/gradient.hpp"

namespace gradient_checks {

using namespace tipi;

struct Instance {
  ControllerParams params;
  ForwardModel model;
  std::vector<VectorXd> states;
  MatrixXd sigma_inv;
  TipiWindow window; // deltas replaced by the frozen linearization
};

inline Instance random_instance(GaussianRng& rng, int n, int m, int tau,
                                double noise = 0.05) {
  Instance inst;
  inst.params.C = oracles::random_matrix(rng, m, n, 0.7);
  inst.params.h = 0.3 * rng.gaussian_vector(m);
  inst.model.V = oracles::random_matrix(rng, n, m, 0.7);
  inst.model.T = oracles::random_matrix(rng, n, n, 0.3);
  inst.model.b = 0.2 * rng.gaussian_vector(n);

  inst.states.push_back(rng.gaussian_vector(n));
  for (int j = 0; j < tau; ++j)
    inst.states.push_back(psi(inst.params, inst.model, inst.states.back()) +
                          noise * rng.gaussian_vector(n));

  MatrixXd sigma = oracles::random_spd(rng, n);
  inst.sigma_inv = sigma.ldlt().solve(MatrixXd::Identity(n, n));
  inst.sigma_inv = 0.5 * (inst.sigma_inv + inst.sigma_inv.transpose());

  inst.window = build_window(inst.states, inst.params, inst.model);
  inst.window.deltas = propagate_deltas(inst.window);
  return inst;
}

// delta_s_now rebuilt from frozen states and residuals with the Jacobians
// evaluated under the given parameters
inline VectorXd reconstruct_delta_now(const Instance& inst,
                                      const ControllerParams& p,
                                      const ForwardModel& m) {
  const int tau = static_cast<int>(inst.states.size()) - 1;
  VectorXd delta = VectorXd::Zero(inst.states[0].size());
  for (int j = 1; j <= tau; ++j)
    delta = loop_jacobian(p, m, inst.states[j - 1]) * delta +
            inst.window.residuals[j - 1];
  return delta;
}

inline double frozen_objective(const Instance& inst,
                               const ControllerParams& p) {
  const VectorXd d = reconstruct_delta_now(inst, p, inst.model);
  return 0.5 * d.dot(inst.sigma_inv * d);
}

inline double frozen_logdet_objective(const Instance& inst,
                                      const ControllerParams& p,
                                      const MatrixXd& d_noise) {
  const int tau = static_cast<int>(inst.states.size()) - 1;
  std::vector<MatrixXd> seq;
  for (int j = tau - 1; j >= 0; --j)
    seq.push_back(loop_jacobian(p, inst.model, inst.states[j]));
  return 0.5 * logdet_spd(sigma_from_jacobians(seq, d_noise, tau));
}

struct FdGrad {
  MatrixXd dC;
  VectorXd dh;
};

template <typename Objective>
FdGrad fd_gradient(const Instance& inst, Objective obj, double step = 1e-6) {
  FdGrad g;
  g.dC.resizeLike(inst.params.C);
  g.dh.resizeLike(inst.params.h);
  for (Eigen::Index i = 0; i < inst.params.C.rows(); ++i)
    for (Eigen::Index j = 0; j < inst.params.C.cols(); ++j) {
      ControllerParams pp = inst.params, pm = inst.params;
      pp.C(i, j) += step;
      pm.C(i, j) -= step;
      g.dC(i, j) = (obj(pp) - obj(pm)) / (2.0 * step);
    }
  for (Eigen::Index i = 0; i < inst.params.h.size(); ++i) {
    ControllerParams pp = inst.params, pm = inst.params;
    pp.h[i] += step;
    pm.h[i] -= step;
    g.dh[i] = (obj(pp) - obj(pm)) / (2.0 * step);
  }
  return g;
}

inline double stacked_rel_error(const MatrixXd& a_c, const VectorXd& a_h,
                                const MatrixXd& b_c, const VectorXd& b_h) {
  const double num = (a_c - b_c).squaredNorm() + (a_h - b_h).squaredNorm();
  const double den = b_c.squaredNorm() + b_h.squaredNorm();
  return std::sqrt(num) / std::max(1e-12, std::sqrt(den));
}

} // namespace gradient_checks

#endif
