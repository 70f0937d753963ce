#ifndef TIPI_HARNESS_SIMULATION_HPP
#define TIPI_HARNESS_SIMULATION_HPP

#include <deque>
#include <memory>
#include <optional>
#include <variant>

#include "tipi/analysis/behavior.hpp"
#include "tipi/harness/config.hpp"
#include "tipi/onedim.hpp"
#include "tipi/plants/loop_plant.hpp"

namespace tipi::harness {

// One closed sensorimotor loop: plant, controller and exploration dynamics,
// stepped together and logged. Everything is seeded from run.seed, so a run
// is a pure function of (config, seed).
//
// Step order (parameter snapshot discipline): the sensor value measured at t
// is processed with the parameters from the end of step t-1 — window, Sigma
// update, controller gradient — then the forward model adapts, and only then
// is the action for step t computed with the fresh parameters.
class Simulation {
public:
  explicit Simulation(const ExperimentConfig& config);

  void step();
  void run_steps(long n);
  void run_all(); // the remaining configured steps

  long t() const { return t_; }
  const analysis::BehaviorLog& log() const { return log_; }

  // chain-plant center of mass; throws for other plants
  double center_of_mass() const;

  // mid-run intervention used by the freeze experiment
  void set_epsilon(double epsilon) { config_.exploration.epsilon = epsilon; }

  const ExperimentConfig& config() const { return config_; }

private:
  struct BankState {
    VectorXd c, h;
  };
  struct NeuralState {
    ControllerParams params;
    ForwardModel model;
    std::unique_ptr<CovTracker> tracker;    // propagated-error covariance
    std::unique_ptr<CovTracker> xi_tracker; // residual covariance
  };
  struct RandomState {
    GaussianRng rng;
  };

  VectorXd act(const VectorXd& s);
  void observe(const VectorXd& s_new); // exploration + model updates
  void append_log_row();

  ExperimentConfig config_;
  std::variant<plants::LoopPlant, std::unique_ptr<plants::ChainPlant>,
               plants::OscillatorPlant>
      plant_;
  std::variant<BankState, NeuralState, RandomState> controller_;

  std::deque<VectorXd> history_; // last tau+1 sensor values
  VectorXd s_cur_, a_cur_;
  long t_ = 0;

  // per-step diagnostics
  double diag_tipi_ = 0.0;
  double diag_tipi_sampled_ = 0.0;
  double diag_xi_norm_ = 0.0;
  double diag_delta_norm_sigma_ = 0.0; // delta_s^T Sigma^-1 delta_s
  double diag_gamma_norm_ = 0.0;

  analysis::BehaviorLog log_;
};

analysis::BehaviorLog run(const ExperimentConfig& config);

} // namespace tipi::harness

#endif
