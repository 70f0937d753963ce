#include "tipi/plants/chain_plant.hpp"

#include <cmath>

namespace tipi::plants {

void ChainConfig::validate() const {
  require(segments >= 2, "ChainConfig: need at least 2 segments");
  require(mass > 0.0 && stiffness > 0.0 && damping >= 0.0,
          "ChainConfig: mass/stiffness/damping invalid");
  require(rest_min > 0.0 && rest_max > rest_min,
          "ChainConfig: rest-length range invalid");
  require(mu_forward >= 0.0 && mu_backward >= mu_forward,
          "ChainConfig: friction must satisfy mu_forward <= mu_backward");
  require(gravity >= 0.0, "ChainConfig: gravity must be >= 0");
  require(v_eps > 0.0 && servo_tc > 0.0 && force_max > 0.0 && dt > 0.0,
          "ChainConfig: v_eps/servo_tc/force_max/dt must be positive");
}

ChainPlant::ChainPlant(const ChainConfig& config) : config_(config) {
  config_.validate();
  const int n = config_.segments;
  const double mid = 0.5 * (config_.rest_min + config_.rest_max);
  x_.resize(n);
  for (int i = 0; i < n; ++i) x_[i] = i * mid;
  v_ = VectorXd::Zero(n);
  rest_ = VectorXd::Constant(n - 1, mid);
}

void ChainPlant::perturb_positions(const VectorXd& offsets) {
  require(offsets.size() == x_.size(), "ChainPlant: offset dimension mismatch");
  x_ += offsets;
  v_.setZero();
  double pe = 0.0;
  for (int i = 0; i + 1 < config_.segments; ++i) {
    const double stretch = (x_[i + 1] - x_[i]) - rest_[i];
    pe += 0.5 * config_.stiffness * stretch * stretch;
  }
  prev_energy_ = pe;
}

double ChainPlant::center_of_mass() const { return x_.mean(); }

VectorXd ChainPlant::sensors() const {
  const int k = config_.segments - 1;
  VectorXd s(k);
  const double half_range = 0.5 * (config_.rest_max - config_.rest_min);
  const double mid = 0.5 * (config_.rest_min + config_.rest_max);
  for (int i = 0; i < k; ++i) {
    const double len = x_[i + 1] - x_[i];
    s[i] = std::clamp((len - mid) / half_range, -1.0, 1.0);
  }
  return s;
}

VectorXd ChainPlant::step(const VectorXd& a) {
  const int n = config_.segments;
  const int k = n - 1;
  require(a.size() == k, "ChainPlant: expected one command per spring");
  require_finite(a, "ChainPlant action");
  const double dt = config_.dt;
  const double half_range = 0.5 * (config_.rest_max - config_.rest_min);
  const double mid = 0.5 * (config_.rest_min + config_.rest_max);

  // servo: rest lengths relax toward the commanded targets
  const double relax = 1.0 - std::exp(-dt / config_.servo_tc);
  double max_rest_move = 0.0;
  for (int i = 0; i < k; ++i) {
    const double target = mid + half_range * std::clamp(a[i], -1.0, 1.0);
    const double move = relax * (target - rest_[i]);
    rest_[i] += move;
    max_rest_move = std::max(max_rest_move, std::abs(move));
  }
  servo_settled_ = max_rest_move < 1e-12;

  VectorXd force = VectorXd::Zero(n);
  for (int i = 0; i < k; ++i) {
    const double len = x_[i + 1] - x_[i];
    const double stretch = len - rest_[i];
    double f_el = config_.stiffness * stretch; // positive pulls ends together
    f_el = std::clamp(f_el, -config_.force_max, config_.force_max);
    const double rel_v = v_[i + 1] - v_[i];
    const double f = f_el + config_.damping * rel_v;
    force[i] += f;
    force[i + 1] -= f;
  }

  const double p_before = config_.mass * v_.sum();
  v_ += (dt / config_.mass) * force;

  // Coulomb-style ground friction, applied to the post-force velocity. The
  // tanh regularizes the force near v = 0; the impulse is additionally capped
  // so friction alone can never push a mass through zero velocity, which is
  // what lets the chain actually come to rest.
  double friction_impulse = 0.0;
  if (friction_enabled_) {
    for (int i = 0; i < n; ++i) {
      const double mu = v_[i] >= 0.0 ? config_.mu_forward : config_.mu_backward;
      double dv = -mu * config_.gravity * dt * std::tanh(v_[i] / config_.v_eps);
      if (std::abs(dv) > std::abs(v_[i])) dv = -v_[i];
      v_[i] += dv;
      friction_impulse += config_.mass * dv;
    }
  }
  x_ += dt * v_;
  const double p_after = config_.mass * v_.sum();
  momentum_residual_ = std::abs(p_after - p_before - friction_impulse);

  if (!x_.allFinite() || !v_.allFinite() || v_.cwiseAbs().maxCoeff() > 1e6)
    throw NumericError("ChainPlant: state diverged (dt too large?)");

  double spring_energy = 0.0;
  for (int i = 0; i < k; ++i) {
    const double stretch = (x_[i + 1] - x_[i]) - rest_[i];
    spring_energy += 0.5 * config_.stiffness * stretch * stretch;
  }
  const double kinetic = 0.5 * config_.mass * v_.squaredNorm();
  const double energy = kinetic + spring_energy;
  // With the servo at rest every force is dissipative or conservative, so a
  // material energy gain means the integration step is unstable. The factor
  // leaves room for the O(dt*omega) oscillation of the discrete energy.
  if (servo_settled_ && energy > prev_energy_ * 1.5 + 1e-9)
    throw NumericError("ChainPlant: energy grew with zero actuation (dt too "
                       "large for this stiffness)");
  prev_energy_ = energy;

  return sensors();
}

} // namespace tipi::plants
