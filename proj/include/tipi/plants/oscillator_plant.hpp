#ifndef TIPI_PLANTS_OSCILLATOR_PLANT_HPP
#define TIPI_PLANTS_OSCILLATOR_PLANT_HPP

#include "tipi/common.hpp"
#include "tipi/rng.hpp"

namespace tipi::plants {

// Damped harmonic oscillator driven by the action,
//   x'' + 2 zeta w0 x' + w0^2 x = coupling * a,
// discretized exactly (matrix exponential with zero-order hold on a), so the
// free amplitude decays by exactly exp(-zeta*w0*dt) per step. The sensor is
// the position plus lambda-scaled Gaussian noise.
struct OscillatorConfig {
  double omega0 = 1.0;
  double zeta = 0.05;
  double coupling = 1.0;
  double lambda = 0.0;
  double dt = 0.05;
  void validate() const;
};

class OscillatorPlant {
public:
  OscillatorPlant(const OscillatorConfig& config, std::uint64_t seed);

  Eigen::Index n_sensors() const { return 1; }
  Eigen::Index n_motors() const { return 1; }

  VectorXd step(const VectorXd& a);

  void set_state(double x, double v);
  double position() const { return state_[0]; }
  double velocity() const { return state_[1]; }

  // decaying envelope: sqrt(x^2 + ((v + zeta w0 x)/w_d)^2) for zeta < 1
  double amplitude() const;

  const OscillatorConfig& config() const { return config_; }

private:
  OscillatorConfig config_;
  Eigen::Matrix2d propagator_;
  Eigen::Vector2d drive_;
  Eigen::Vector2d state_;
  GaussianRng rng_;
};

} // namespace tipi::plants

#endif
