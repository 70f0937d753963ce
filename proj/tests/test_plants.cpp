#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tipi/plants/chain_plant.hpp"
#include "tipi/plants/loop_plant.hpp"
#include "tipi/plants/oscillator_plant.hpp"

using namespace tipi;
using namespace tipi::plants;

TEST_SUITE_BEGIN("plants");

TEST_CASE("loop plant: lambda=0 echoes the action") {
  LoopPlant plant(2, 0.0, 5);
  VectorXd a(2);
  a << 0.5, -0.3;
  CHECK((plant.step(a) - a).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("loop plant: noise statistics match lambda") {
  LoopPlant plant(1, 0.1, 6);
  const int n = 100000;
  std::vector<double> xs(n);
  const VectorXd zero = VectorXd::Zero(1);
  for (int i = 0; i < n; ++i) xs[i] = plant.step(zero)[0];
  CHECK(std::abs(oracles::mean(xs)) < 3.0 * 0.1 / std::sqrt(double(n)));
  CHECK(std::abs(oracles::stddev(xs) - 0.1) < 0.002);
}

TEST_CASE("loop plant: closed loop with supercritical C is bistable under "
          "small noise") {
  LoopPlant plant(1, 0.01, 7);
  double s = 0.5;
  const double c = 1.1, h = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const VectorXd out = plant.step(VectorXd::Constant(1, std::tanh(c * s + h)));
    s = out[0];
    CHECK(s > 0.2); // stays in the positive well throughout
  }
}

TEST_CASE("chain plant: symmetric rest state stays put") {
  ChainConfig cfg;
  ChainPlant plant(cfg);
  const double com0 = plant.center_of_mass();
  const VectorXd zero = VectorXd::Zero(plant.n_motors());
  for (int t = 0; t < 2000; ++t) plant.step(zero);
  CHECK(std::abs(plant.center_of_mass() - com0) < 1e-9);
}

TEST_CASE("chain plant: scripted traveling wave locomotes") {
  ChainConfig cfg;
  ChainPlant plant(cfg);
  const int k = static_cast<int>(plant.n_motors());
  const double com0 = plant.center_of_mass();
  VectorXd a(k);
  const double omega = 2.0 * M_PI / 120.0; // wave period of 120 steps
  for (int t = 0; t < 10000; ++t) {
    for (int i = 0; i < k; ++i) a[i] = 0.8 * std::sin(omega * t - 1.1 * i);
    plant.step(a);
    CHECK(plant.momentum_audit_residual() < 1e-9);
  }
  CHECK(plant.center_of_mass() - com0 > 0.1); // strictly positive travel
}

TEST_CASE("chain plant: frozen actuation comes to rest") {
  ChainConfig cfg;
  ChainPlant plant(cfg);
  const int k = static_cast<int>(plant.n_motors());
  VectorXd a = VectorXd::Constant(k, 0.3);
  for (int t = 0; t < 6000; ++t) plant.step(a);
  const double com_mid = plant.center_of_mass();
  for (int t = 0; t < 2000; ++t) plant.step(a);
  CHECK(std::abs(plant.center_of_mass() - com_mid) < 1e-6);
}

TEST_CASE("chain plant: disabling friction conserves momentum") {
  ChainConfig cfg;
  ChainPlant plant(cfg);
  plant.set_friction_enabled(false);
  const int k = static_cast<int>(plant.n_motors());
  VectorXd a(k);
  for (int t = 0; t < 3000; ++t) {
    for (int i = 0; i < k; ++i)
      a[i] = 0.6 * std::sin(0.05 * t - 0.9 * i);
    plant.step(a);
    const double momentum = cfg.mass * plant.velocities().sum();
    CHECK(std::abs(momentum) < 1e-9);
  }
}

TEST_CASE("chain plant: sensors stay inside [-1, 1]") {
  ChainConfig cfg;
  ChainPlant plant(cfg);
  GaussianRng rng(8);
  const int k = static_cast<int>(plant.n_motors());
  for (int t = 0; t < 2000; ++t) {
    VectorXd a(k);
    for (int i = 0; i < k; ++i) a[i] = rng.uniform(-1.0, 1.0);
    const VectorXd s = plant.step(a);
    CHECK(s.minCoeff() >= -1.0);
    CHECK(s.maxCoeff() <= 1.0);
  }
}

TEST_CASE("chain plant: oversized dt trips the instability detector") {
  ChainConfig cfg;
  cfg.dt = 1.0; // omega*dt >> 2 for the default stiffness
  ChainPlant plant(cfg);
  VectorXd offsets = VectorXd::Zero(cfg.segments);
  offsets[0] = 0.2; // store spring energy, zero actuation
  plant.perturb_positions(offsets);
  const VectorXd zero = VectorXd::Zero(plant.n_motors());
  bool thrown = false;
  try {
    for (int t = 0; t < 200; ++t) plant.step(zero);
  } catch (const NumericError&) {
    thrown = true;
  }
  CHECK(thrown);
}

TEST_CASE("chain plant: config validation") {
  ChainConfig cfg;
  cfg.mu_forward = 2.0;
  cfg.mu_backward = 0.5; // must be >= mu_forward
  CHECK_THROWS_AS(ChainPlant{cfg}, ContractError);
}

TEST_CASE("oscillator: free amplitude decays by exactly exp(-zeta*w0*dt)") {
  OscillatorConfig cfg;
  cfg.omega0 = 2.0;
  cfg.zeta = 0.1;
  cfg.dt = 0.05;
  OscillatorPlant plant(cfg, 9);
  plant.set_state(1.0, 0.0);
  const double decay = std::exp(-cfg.zeta * cfg.omega0 * cfg.dt);
  double amp = plant.amplitude();
  const VectorXd zero = VectorXd::Zero(1);
  for (int t = 0; t < 200; ++t) {
    plant.step(zero);
    const double next = plant.amplitude();
    CHECK(next == doctest::Approx(amp * decay).epsilon(1e-12));
    amp = next;
  }
}

TEST_CASE("oscillator: driven response peaks at the natural frequency") {
  OscillatorConfig cfg;
  cfg.omega0 = 1.5;
  cfg.zeta = 0.05;
  cfg.dt = 0.02;
  const int steps = 20000;
  std::vector<double> freqs, amps;
  for (double w = 0.5; w <= 2.6; w += 0.1) {
    OscillatorPlant plant(cfg, 10);
    double peak = 0.0;
    for (int t = 0; t < steps; ++t) {
      const VectorXd s =
          plant.step(VectorXd::Constant(1, std::sin(w * t * cfg.dt)));
      if (t > steps / 2) peak = std::max(peak, std::abs(s[0]));
    }
    freqs.push_back(w);
    amps.push_back(peak);
  }
  const auto it = std::max_element(amps.begin(), amps.end());
  const double w_best = freqs[std::distance(amps.begin(), it)];
  CHECK(std::abs(w_best - cfg.omega0) <= 0.1 + 1e-12);
}

TEST_CASE("oscillator: sensor noise scales linearly with lambda") {
  OscillatorConfig c1;
  c1.lambda = 0.05;
  OscillatorConfig c2 = c1;
  c2.lambda = 0.10;
  OscillatorPlant p1(c1, 11), p2(c2, 11); // identical draws
  const VectorXd zero = VectorXd::Zero(1);
  for (int t = 0; t < 500; ++t) {
    const double s1 = p1.step(zero)[0];
    const double s2 = p2.step(zero)[0];
    CHECK(s2 == doctest::Approx(2.0 * s1).epsilon(1e-12));
  }
}

TEST_SUITE_END();
