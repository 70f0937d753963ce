// Command-line harness: seeded experiment runs, parameter sweeps and
// post-hoc behavior analyses over CSV logs.
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tipi/analysis/cluster.hpp"
#include "tipi/harness/csv.hpp"
#include "tipi/harness/presets.hpp"
#include "tipi/harness/simulation.hpp"
#include "tipi/harness/sweep.hpp"

namespace fs = std::filesystem;
using namespace tipi;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string preset;
  std::string out_dir = ".";
  std::int64_t seed = -1;
  std::int64_t steps = -1;
  int threads = 1;
};

harness::Preset resolve_preset(const CommonOpts& opts) {
  if (!opts.preset.empty()) {
    const harness::Preset* p = harness::find_preset(opts.preset);
    if (!p) throw ContractError("unknown preset '" + opts.preset + "'");
    harness::Preset copy = *p;
    if (opts.seed >= 0) copy.reseed(static_cast<std::uint64_t>(opts.seed));
    return copy;
  }
  if (opts.config_path.empty())
    throw ContractError("either --config or --preset is required");
  harness::Preset p;
  p.name = fs::path(opts.config_path).stem().string();
  p.kind = harness::Preset::Kind::single;
  p.config = harness::parse_config_file(opts.config_path);
  if (opts.seed >= 0) p.reseed(static_cast<std::uint64_t>(opts.seed));
  return p;
}

std::string out_path(const CommonOpts& opts, const std::string& name) {
  fs::create_directories(opts.out_dir);
  return (fs::path(opts.out_dir) / name).string();
}

int cmd_run(const CommonOpts& opts) {
  harness::Preset preset = resolve_preset(opts);
  if (preset.kind == harness::Preset::Kind::sweep)
    throw ContractError("preset '" + preset.name +
                        "' is a sweep; use the sweep subcommand");
  std::vector<std::pair<std::string, harness::ExperimentConfig>> runs;
  if (preset.kind == harness::Preset::Kind::bundle)
    runs = preset.bundle;
  else
    runs.emplace_back(preset.name, preset.config);

  for (auto& [tag, cfg] : runs) {
    if (opts.steps >= 0) cfg.run.steps = opts.steps;
    const analysis::BehaviorLog log = harness::run(cfg);
    const std::string path =
        !cfg.run.out.empty() && runs.size() == 1
            ? cfg.run.out
            : out_path(opts, tag + ".csv");
    harness::write_log_csv(log, path);
    std::cout << tag << ": " << log.rows() << " rows -> " << path << "\n";
  }
  return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& sweep_config) {
  harness::SweepSpec spec;
  if (!sweep_config.empty()) {
    spec = harness::parse_sweep_file(sweep_config);
  } else {
    harness::Preset preset = resolve_preset(opts);
    if (preset.kind != harness::Preset::Kind::sweep || !preset.sweep)
      throw ContractError("preset '" + preset.name + "' is not a sweep");
    spec = *preset.sweep;
  }
  const auto rows = harness::run_sweep(spec, opts.threads);
  const std::string path = out_path(opts, "sweep.csv");
  std::ofstream out(path);
  out << harness::sweep_table_csv(rows);
  std::cout << "swept " << spec.parameter << " over " << rows.size()
            << " values -> " << path << "\n";
  for (const auto& r : rows)
    std::cout << "  " << r.value << ": mean=" << r.mean << " std=" << r.stddev
              << "\n";
  return 0;
}

int cmd_analyze_dimension(const std::string& log_path,
                          const std::vector<int>& lengths,
                          const std::string& out_file) {
  const analysis::BehaviorLog log = harness::read_log_csv(log_path);
  const MatrixXd sensors = log.columns_with_prefix("s");
  const auto curve = analysis::dimension_curve(sensors, lengths);
  std::ofstream out(out_file);
  out << "chunk_length,mean_dimension,std_dimension,n_chunks\n";
  for (const auto& p : curve)
    out << p.chunk_length << "," << harness::format_double(p.mean_dimension)
        << "," << harness::format_double(p.std_dimension) << "," << p.n_chunks
        << "\n";
  std::cout << "dimension curve (" << curve.size() << " lengths) -> "
            << out_file << "\n";
  return 0;
}

int cmd_analyze_overlap(const std::string& log_path, int chunk_length,
                        int components, const std::string& out_file) {
  const analysis::BehaviorLog log = harness::read_log_csv(log_path);
  const MatrixXd sensors = log.columns_with_prefix("s");
  const MatrixXd d = analysis::overlap_matrix(sensors, chunk_length, components);
  harness::write_matrix_csv(d, out_file);
  std::cout << "overlap distances for " << d.rows() << " chunks -> "
            << out_file << "\n";
  return 0;
}

int cmd_analyze_cluster(const std::vector<std::string>& log_paths,
                        const std::string& matrix_path, int k,
                        const std::string& out_prefix) {
  MatrixXd dist;
  std::vector<std::string> labels;
  if (!matrix_path.empty()) {
    dist = harness::read_matrix_csv(matrix_path, false);
    for (Eigen::Index i = 0; i < dist.rows(); ++i)
      labels.push_back("item" + std::to_string(i));
  } else {
    require(log_paths.size() >= 2, "analyze cluster: need >= 2 logs");
    std::vector<analysis::BehaviorLog> logs;
    for (const auto& p : log_paths) {
      logs.push_back(harness::read_log_csv(p));
      labels.push_back(fs::path(p).stem().string());
    }
    dist = MatrixXd::Zero(logs.size(), logs.size());
    for (std::size_t i = 0; i < logs.size(); ++i)
      for (std::size_t j = i + 1; j < logs.size(); ++j) {
        const double d = analysis::mean_param_distance(logs[i], logs[j]);
        dist(i, j) = d;
        dist(j, i) = d;
      }
  }
  const analysis::Dendrogram dendro =
      analysis::hierarchical_cluster(dist, analysis::Linkage::average, labels);
  harness::write_matrix_csv(dist, out_prefix + "_distances.csv");
  std::ofstream nf(out_prefix + "_dendrogram.newick");
  nf << "# linkage: average\n" << dendro.to_newick() << "\n";
  std::cout << dendro.to_newick() << "\n";
  if (k >= 1) {
    const auto assign = dendro.cut(k);
    std::ofstream af(out_prefix + "_clusters.csv");
    af << "label,cluster\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
      af << labels[i] << "," << assign[i] << "\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
      std::cout << "  " << labels[i] << " -> cluster " << assign[i] << "\n";
  }
  return 0;
}

int cmd_presets(bool show, const std::string& name) {
  if (!show) {
    for (const auto& p : harness::presets())
      std::cout << p.name << ": " << p.description << "\n";
    return 0;
  }
  const harness::Preset* p = harness::find_preset(name);
  if (!p) throw ContractError("unknown preset '" + name + "'");
  if (p->kind == harness::Preset::Kind::sweep)
    std::cout << harness::sweep_to_json(*p->sweep) << "\n";
  else if (p->kind == harness::Preset::Kind::bundle)
    for (const auto& [tag, cfg] : p->bundle)
      std::cout << "// " << tag << "\n" << harness::config_to_json(cfg) << "\n";
  else
    std::cout << harness::config_to_json(p->config) << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"tipi: predictive-information exploration dynamics for "
               "sensorimotor loops"};
  app.require_subcommand(1);

  CommonOpts opts;

  CLI::App* run = app.add_subcommand("run", "run an experiment, write CSV log(s)");
  run->add_option("--config", opts.config_path, "config JSON file");
  run->add_option("--preset", opts.preset, "named preset (see presets list)");
  run->add_option("--seed", opts.seed, "seed override");
  run->add_option("--steps", opts.steps, "step-count override");
  run->add_option("--out", opts.out_dir, "output directory");

  std::string sweep_config;
  CLI::App* sw = app.add_subcommand("sweep", "parameter sweep with replicates");
  sw->add_option("--config", sweep_config, "sweep JSON file (base + sweep)");
  sw->add_option("--preset", opts.preset, "named sweep preset");
  sw->add_option("--seed", opts.seed, "seed override");
  sw->add_option("--out", opts.out_dir, "output directory");
  sw->add_option("--threads", opts.threads, "worker threads");

  CLI::App* an = app.add_subcommand("analyze", "post-hoc analyses over logs");
  an->require_subcommand(1);

  std::string log_path, out_file = "dimension.csv";
  std::vector<int> lengths{25, 50, 100, 200, 400, 800};
  CLI::App* dim = an->add_subcommand("dimension", "effective-dimension curve");
  dim->add_option("--log", log_path, "behavior log CSV")->required();
  dim->add_option("--lengths", lengths, "chunk lengths")->delimiter(',');
  dim->add_option("--out", out_file, "output CSV");

  int chunk_length = 200, components = 6;
  std::string overlap_out = "overlap.csv";
  CLI::App* ov = an->add_subcommand("overlap", "pairwise chunk distances");
  ov->add_option("--log", log_path, "behavior log CSV")->required();
  ov->add_option("--chunk-length", chunk_length, "chunk length (rows)");
  ov->add_option("--components", components, "principal components");
  ov->add_option("--out", overlap_out, "output CSV");

  std::vector<std::string> cluster_logs;
  std::string matrix_path, cluster_prefix = "cluster";
  int cut_k = 0;
  CLI::App* cl = an->add_subcommand(
      "cluster", "hierarchical clustering of runs by parameter distance");
  cl->add_option("--logs", cluster_logs, "behavior logs (>= 2)")
      ->delimiter(',');
  cl->add_option("--matrix", matrix_path, "precomputed distance matrix CSV");
  cl->add_option("--k", cut_k, "also cut the dendrogram into k clusters");
  cl->add_option("--out", cluster_prefix, "output file prefix");

  bool preset_show = false;
  std::string preset_name;
  CLI::App* pr = app.add_subcommand("presets", "list or show named presets");
  CLI::App* pl = pr->add_subcommand("list", "list presets");
  CLI::App* ps = pr->add_subcommand("show", "dump a preset as config JSON");
  ps->add_option("name", preset_name, "preset name")->required();
  (void)pl;

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(opts);
    if (sw->parsed()) return cmd_sweep(opts, sweep_config);
    if (an->parsed()) {
      if (dim->parsed()) return cmd_analyze_dimension(log_path, lengths, out_file);
      if (ov->parsed())
        return cmd_analyze_overlap(log_path, chunk_length, components,
                                   overlap_out);
      if (cl->parsed())
        return cmd_analyze_cluster(cluster_logs, matrix_path, cut_k,
                                   cluster_prefix);
    }
    if (pr->parsed()) {
      preset_show = ps->parsed();
      return cmd_presets(preset_show, preset_name);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
