#include "tipi/plants/oscillator_plant.hpp"

#include <cmath>

namespace tipi::plants {

void OscillatorConfig::validate() const {
  require(omega0 > 0.0, "OscillatorConfig: omega0 must be positive");
  require(zeta >= 0.0 && zeta < 1.0,
          "OscillatorConfig: zeta must lie in [0,1) (underdamped)");
  require(dt > 0.0, "OscillatorConfig: dt must be positive");
  require(lambda >= 0.0, "OscillatorConfig: lambda must be >= 0");
}

OscillatorPlant::OscillatorPlant(const OscillatorConfig& config,
                                 std::uint64_t seed)
    : config_(config), rng_(seed) {
  config_.validate();
  const double w0 = config_.omega0;
  const double alpha = config_.zeta * w0;
  const double wd = w0 * std::sqrt(1.0 - config_.zeta * config_.zeta);
  const double dt = config_.dt;
  const double e = std::exp(-alpha * dt);
  const double c = std::cos(wd * dt);
  const double s = std::sin(wd * dt);

  // exact exp(A dt) for A = [[0,1],[-w0^2,-2 zeta w0]], underdamped branch
  propagator_ << e * (c + alpha / wd * s), e * (s / wd),
      -e * (w0 * w0 / wd) * s, e * (c - alpha / wd * s);

  // zero-order hold: Gamma = A^{-1} (Phi - I) B, B = (0,1)^T
  Eigen::Matrix2d a_inv;
  a_inv << -2.0 * config_.zeta / w0, -1.0 / (w0 * w0), 1.0, 0.0;
  const Eigen::Vector2d b(0.0, 1.0);
  drive_ = a_inv * (propagator_ * b - b);

  state_.setZero();
}

void OscillatorPlant::set_state(double x, double v) { state_ << x, v; }

double OscillatorPlant::amplitude() const {
  const double alpha = config_.zeta * config_.omega0;
  const double wd =
      config_.omega0 * std::sqrt(1.0 - config_.zeta * config_.zeta);
  const double u = (state_[1] + alpha * state_[0]) / wd;
  return std::sqrt(state_[0] * state_[0] + u * u);
}

VectorXd OscillatorPlant::step(const VectorXd& a) {
  require(a.size() == 1, "OscillatorPlant: expected scalar action");
  state_ = propagator_ * state_ + drive_ * (config_.coupling * a[0]);
  VectorXd s(1);
  s[0] = state_[0];
  if (config_.lambda > 0.0) s[0] += config_.lambda * rng_.gaussian();
  return s;
}

} // namespace tipi::plants
