#ifndef TIPI_HARNESS_SWEEP_HPP
#define TIPI_HARNESS_SWEEP_HPP

#include "tipi/harness/config.hpp"

namespace tipi::harness {

struct SweepRow {
  double value;
  double mean;
  double stddev;
  std::vector<double> samples; // per replicate, index order
};

// Runs replicates for every swept value and aggregates the metric. Replicate
// seeds are derived independently from the base seed; workers own their
// simulations exclusively and results are merged by index, so the summary is
// deterministic for any thread count.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads = 1);

std::string sweep_table_csv(const std::vector<SweepRow>& rows);

} // namespace tipi::harness

#endif
