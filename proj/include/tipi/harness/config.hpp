#ifndef TIPI_HARNESS_CONFIG_HPP
#define TIPI_HARNESS_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tipi/gradient.hpp"
#include "tipi/plants/chain_plant.hpp"
#include "tipi/plants/oscillator_plant.hpp"

namespace tipi::harness {

struct PlantSpec {
  enum class Kind { loop, chain, oscillator };
  Kind kind = Kind::loop;

  // loop
  int loop_dim = 1;
  double loop_lambda = 0.0;
  std::vector<double> loop_s0; // initial sensor values, zeros if empty

  // chain
  plants::ChainConfig chain;
  std::vector<double> pose_offsets; // fixed initial-pose perturbation
  double pose_jitter = 0.0;         // seeded uniform pose jitter amplitude

  // oscillator
  plants::OscillatorConfig oscillator;

  Eigen::Index n_sensors() const;
  Eigen::Index n_motors() const;
};

struct ControllerSpec {
  enum class Kind { onedim_bank, neural, random };
  Kind kind = Kind::onedim_bank;

  double init_c = 1.0;  // C0 = init_c * I (neural) or per-channel c (bank)
  double init_h = 0.0;
  double jitter_c = 0.0; // seeded uniform jitter added per entry
  double jitter_h = 0.0;
  // forward model init (neural): V = init_v*I, T = init_t*I, b = init_b
  double init_v = 1.0;
  double init_t = 0.0;
  double init_b = 0.0;
  std::string activation = "tanh";
};

struct RunSpec {
  long steps = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int log_every = 1;
  std::string out; // optional output path for the log
};

struct ExperimentConfig {
  PlantSpec plant;
  ControllerSpec controller;
  ExplorationConfig exploration;
  RunSpec run;

  void validate() const;
};

struct SweepSpec {
  ExperimentConfig base;
  std::string parameter; // dotted path, e.g. "exploration.epsilon"
  std::vector<double> values;
  int replicates = 1;
  std::string metric = "displacement";

  void validate() const;
};

// Sets a swept parameter on a config copy; throws on unknown paths.
void set_parameter(ExperimentConfig& config, const std::string& path,
                   double value);

// Strict JSON parsing: unknown keys are errors, reported with their path.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig parse_config_file(const std::string& path);
SweepSpec parse_sweep(const std::string& json_text);
SweepSpec parse_sweep_file(const std::string& path);

std::string config_to_json(const ExperimentConfig& config);
std::string sweep_to_json(const SweepSpec& spec);

} // namespace tipi::harness

#endif
