#ifndef TIPI_PLANTS_CHAIN_PLANT_HPP
#define TIPI_PLANTS_CHAIN_PLANT_HPP

#include <vector>

#include "tipi/common.hpp"

namespace tipi::plants {

// Frictional mass-spring chain crawling on a line.
//
// N point masses are connected by N-1 spring-dampers whose rest lengths are
// actuated. Commands are targets in [-1,1] mapped onto [rest_min, rest_max];
// a first-order servo drags the actual rest length toward the target with
// time constant servo_tc, and the elastic force is capped at force_max, so
// the realized spring lengths can differ substantially from the commands.
// Ground contact is a velocity-sign-dependent Coulomb friction, cheap in +x
// and expensive in -x (mu_forward < mu_backward), regularized by
// tanh(v/v_eps). Internal oscillations are rectified by this asymmetry into
// net center-of-mass motion.
//
// Sensors are spring lengths normalized to [-1,1] over [rest_min, rest_max]
// (clamped). Integration is semi-implicit Euler.
struct ChainConfig {
  int segments = 6;          // number of masses N
  double mass = 1.0;
  double stiffness = 40.0;   // spring constant k
  double damping = 1.0;      // relative-velocity damping c
  double rest_min = 0.6;
  double rest_max = 1.4;
  double mu_forward = 0.25;
  double mu_backward = 1.0;
  double gravity = 9.81;     // sets the friction normal force mu*m*g
  double v_eps = 1e-3;       // friction regularization velocity
  double servo_tc = 0.1;     // rest-length servo time constant
  double force_max = 12.0;   // elastic force cap (underactuation)
  double dt = 0.01;

  void validate() const;
};

class ChainPlant {
public:
  explicit ChainPlant(const ChainConfig& config);

  Eigen::Index n_sensors() const { return config_.segments - 1; }
  Eigen::Index n_motors() const { return config_.segments - 1; }

  // a: target rest lengths in [-1,1] per spring; returns normalized lengths.
  VectorXd step(const VectorXd& a);

  VectorXd sensors() const; // current normalized spring lengths

  double center_of_mass() const;
  // |sum m dv - dt * sum F_friction| of the last step
  double momentum_audit_residual() const { return momentum_residual_; }

  // for tests: evolve without ground friction (momentum conservation check)
  void set_friction_enabled(bool on) { friction_enabled_ = on; }

  // initial-pose perturbation: displaces interior masses, zero velocities
  void perturb_positions(const VectorXd& offsets);

  const ChainConfig& config() const { return config_; }
  const VectorXd& positions() const { return x_; }
  const VectorXd& velocities() const { return v_; }

private:
  ChainConfig config_;
  VectorXd x_, v_;
  VectorXd rest_; // servo state: actual rest lengths
  bool friction_enabled_ = true;
  double momentum_residual_ = 0.0;
  double prev_energy_ = 0.0;
  bool servo_settled_ = false;
};

} // namespace tipi::plants

#endif
