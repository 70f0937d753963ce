#ifndef TIPI_HARNESS_PRESETS_HPP
#define TIPI_HARNESS_PRESETS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tipi/harness/config.hpp"

namespace tipi::harness {

// A preset is either a single run, a parameter sweep, or a bundle of tagged
// runs sharing an analysis (dimension study, environment clustering).
struct Preset {
  enum class Kind { single, sweep, bundle };
  std::string name;
  std::string description;
  Kind kind = Kind::single;
  ExperimentConfig config;                              // single
  std::optional<SweepSpec> sweep;                       // sweep
  std::vector<std::pair<std::string, ExperimentConfig>> bundle;

  // seed override applied to every contained config
  void reseed(std::uint64_t seed);
};

const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

} // namespace tipi::harness

#endif
