#include "tipi/harness/sweep.hpp"

#include <cmath>
#include <sstream>
#include <thread>

#include "tipi/harness/csv.hpp"
#include "tipi/harness/simulation.hpp"
#include "tipi/rng.hpp"

namespace tipi::harness {

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  require(threads >= 1, "sweep: thread count must be >= 1");

  struct Job {
    std::size_t value_index;
    int replicate;
  };
  std::vector<Job> jobs;
  for (std::size_t vi = 0; vi < spec.values.size(); ++vi)
    for (int r = 0; r < spec.replicates; ++r)
      jobs.push_back({vi, r});

  std::vector<double> results(jobs.size(), 0.0);
  std::vector<std::string> errors(jobs.size());

  auto worker = [&](int tid) {
    for (std::size_t j = tid; j < jobs.size(); j += threads) {
      try {
        ExperimentConfig cfg = spec.base;
        set_parameter(cfg, spec.parameter, spec.values[jobs[j].value_index]);
        cfg.run.seed = derive_seed(
            spec.base.run.seed,
            jobs[j].value_index * 1000003ULL + jobs[j].replicate);
        cfg.run.log_every = std::max(cfg.run.log_every, 100); // metric only
        Simulation sim(cfg);
        const double com0 = sim.center_of_mass();
        sim.run_all();
        results[j] = std::abs(sim.center_of_mass() - com0);
      } catch (const std::exception& e) {
        errors[j] = e.what();
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int tid = 0; tid < threads; ++tid) pool.emplace_back(worker, tid);
    for (auto& th : pool) th.join();
  }

  for (const auto& err : errors)
    if (!err.empty()) throw NumericError("sweep: replicate failed: " + err);

  std::vector<SweepRow> rows;
  for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
    SweepRow row;
    row.value = spec.values[vi];
    for (std::size_t j = 0; j < jobs.size(); ++j)
      if (jobs[j].value_index == vi) row.samples.push_back(results[j]);
    const double n = static_cast<double>(row.samples.size());
    double mean = 0.0;
    for (double v : row.samples) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : row.samples) var += (v - mean) * (v - mean);
    var = row.samples.size() > 1 ? var / (n - 1.0) : 0.0;
    row.mean = mean;
    row.stddev = std::sqrt(var);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_table_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  std::size_t max_reps = 0;
  for (const auto& r : rows) max_reps = std::max(max_reps, r.samples.size());
  os << "value,mean,std";
  for (std::size_t i = 0; i < max_reps; ++i) os << ",rep_" << i;
  os << "\n";
  for (const auto& r : rows) {
    os << format_double(r.value) << "," << format_double(r.mean) << ","
       << format_double(r.stddev);
    for (double s : r.samples) os << "," << format_double(s);
    os << "\n";
  }
  return os.str();
}

} // namespace tipi::harness
