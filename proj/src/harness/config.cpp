#include "tipi/harness/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace tipi::harness {

using nlohmann::json;

Eigen::Index PlantSpec::n_sensors() const {
  switch (kind) {
    case Kind::loop: return loop_dim;
    case Kind::chain: return chain.segments - 1;
    case Kind::oscillator: return 1;
  }
  return 0;
}

Eigen::Index PlantSpec::n_motors() const { return n_sensors(); }

void ExperimentConfig::validate() const {
  require(run.seed_set, "config: run.seed is mandatory");
  require(run.steps >= 0, "config: run.steps must be >= 0");
  require(run.log_every >= 1, "config: run.log_every must be >= 1");
  exploration.validate();
  if (plant.kind == PlantSpec::Kind::chain) plant.chain.validate();
  if (plant.kind == PlantSpec::Kind::oscillator) plant.oscillator.validate();
  if (plant.kind == PlantSpec::Kind::loop) {
    require(plant.loop_dim >= 1, "config: plant.dim must be >= 1");
    require(plant.loop_lambda >= 0.0, "config: plant.lambda must be >= 0");
    require(plant.loop_s0.empty() ||
                static_cast<Eigen::Index>(plant.loop_s0.size()) ==
                    plant.n_sensors(),
            "config: plant.s0 length must match the plant dimension");
  }
  require(plant.pose_offsets.empty() ||
              plant.kind == PlantSpec::Kind::chain,
          "config: pose_offsets only apply to the chain plant");
  if (!plant.pose_offsets.empty())
    require(static_cast<int>(plant.pose_offsets.size()) ==
                plant.chain.segments,
            "config: pose_offsets must list one value per segment");
  if (controller.kind == ControllerSpec::Kind::onedim_bank)
    require(exploration.mode == ExplorationConfig::Mode::onedim_deterministic,
            "config: the onedim_bank controller requires the "
            "onedim_deterministic mode");
  if (controller.kind == ControllerSpec::Kind::neural)
    require(exploration.mode != ExplorationConfig::Mode::onedim_deterministic,
            "config: the neural controller requires neural_tau2 or "
            "general_tau mode");
  if (controller.kind == ControllerSpec::Kind::onedim_bank)
    require(controller.init_c != 0.0,
            "config: onedim controllers need a nonzero initial C "
            "(the update has a 1/(2C) term)");
}

void SweepSpec::validate() const {
  base.validate();
  require(!values.empty(), "sweep: values must be nonempty");
  require(replicates >= 1, "sweep: replicates must be >= 1");
  require(metric == "displacement", "sweep: unknown metric '" + metric + "'");
  ExperimentConfig probe = base;
  set_parameter(probe, parameter, values.front()); // path check
  if (metric == "displacement")
    require(base.plant.kind == PlantSpec::Kind::chain,
            "sweep: the displacement metric is only defined for the chain "
            "plant");
}

void set_parameter(ExperimentConfig& config, const std::string& path,
                   double value) {
  if (path == "exploration.epsilon") config.exploration.epsilon = value;
  else if (path == "exploration.eta") config.exploration.eta = value;
  else if (path == "exploration.alpha") config.exploration.alpha = value;
  else if (path == "exploration.eta_phi") config.exploration.eta_phi = value;
  else if (path == "controller.init_c") config.controller.init_c = value;
  else if (path == "controller.init_h") config.controller.init_h = value;
  else if (path == "plant.lambda") config.plant.loop_lambda = value;
  else if (path == "plant.chain.mu_backward") config.plant.chain.mu_backward = value;
  else if (path == "plant.chain.gravity") config.plant.chain.gravity = value;
  else
    throw ContractError("sweep: unknown parameter path '" + path + "'");
}

namespace {

// Strict reader: every consumed key is recorded and leftovers are an error,
// so config files are fully audited (no silently ignored settings).
class Section {
public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    require(j_.is_object(), path_ + ": expected an object");
  }

  bool has(const std::string& key) {
    return j_.contains(key);
  }

  double number(const std::string& key, double def) {
    if (!j_.contains(key)) return def;
    mark(key);
    require(j_[key].is_number(), loc(key) + ": expected a number");
    return j_[key].get<double>();
  }

  double number_required(const std::string& key) {
    require(j_.contains(key), loc(key) + ": missing required key");
    return number(key, 0.0);
  }

  long integer(const std::string& key, long def) {
    if (!j_.contains(key)) return def;
    mark(key);
    require(j_[key].is_number_integer(), loc(key) + ": expected an integer");
    return j_[key].get<long>();
  }

  std::string text(const std::string& key, const std::string& def) {
    if (!j_.contains(key)) return def;
    mark(key);
    require(j_[key].is_string(), loc(key) + ": expected a string");
    return j_[key].get<std::string>();
  }

  bool boolean(const std::string& key, bool def) {
    if (!j_.contains(key)) return def;
    mark(key);
    require(j_[key].is_boolean(), loc(key) + ": expected a boolean");
    return j_[key].get<bool>();
  }

  std::vector<double> number_list(const std::string& key) {
    if (!j_.contains(key)) return {};
    mark(key);
    require(j_[key].is_array(), loc(key) + ": expected an array");
    std::vector<double> out;
    for (const auto& v : j_[key]) {
      require(v.is_number(), loc(key) + ": expected numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }

  const json* object(const std::string& key) {
    if (!j_.contains(key)) return nullptr;
    mark(key);
    return &j_[key];
  }

  std::string loc(const std::string& key) const { return path_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      require(seen_.count(it.key()) > 0,
              path_ + "." + it.key() + ": unknown key");
  }

private:
  void mark(const std::string& key) { seen_.insert(key); }
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

PlantSpec parse_plant(const json& j, const std::string& path) {
  Section s(j, path);
  PlantSpec p;
  const std::string kind = s.text("kind", "loop");
  if (kind == "loop") p.kind = PlantSpec::Kind::loop;
  else if (kind == "chain") p.kind = PlantSpec::Kind::chain;
  else if (kind == "oscillator") p.kind = PlantSpec::Kind::oscillator;
  else throw ContractError(s.loc("kind") + ": unknown plant kind '" + kind + "'");

  if (p.kind == PlantSpec::Kind::loop) {
    p.loop_dim = static_cast<int>(s.integer("dim", 1));
    p.loop_lambda = s.number("lambda", 0.0);
    p.loop_s0 = s.number_list("s0");
  } else if (p.kind == PlantSpec::Kind::chain) {
    if (const json* cj = s.object("chain")) {
      Section c(*cj, path + ".chain");
      plants::ChainConfig& cc = p.chain;
      cc.segments = static_cast<int>(c.integer("segments", cc.segments));
      cc.mass = c.number("mass", cc.mass);
      cc.stiffness = c.number("stiffness", cc.stiffness);
      cc.damping = c.number("damping", cc.damping);
      cc.rest_min = c.number("rest_min", cc.rest_min);
      cc.rest_max = c.number("rest_max", cc.rest_max);
      cc.mu_forward = c.number("mu_forward", cc.mu_forward);
      cc.mu_backward = c.number("mu_backward", cc.mu_backward);
      cc.gravity = c.number("gravity", cc.gravity);
      cc.v_eps = c.number("v_eps", cc.v_eps);
      cc.servo_tc = c.number("servo_tc", cc.servo_tc);
      cc.force_max = c.number("force_max", cc.force_max);
      cc.dt = c.number("dt", cc.dt);
      c.finish();
    }
    p.pose_offsets = s.number_list("pose_offsets");
    p.pose_jitter = s.number("pose_jitter", 0.0);
  } else {
    if (const json* oj = s.object("oscillator")) {
      Section o(*oj, path + ".oscillator");
      plants::OscillatorConfig& oc = p.oscillator;
      oc.omega0 = o.number("omega0", oc.omega0);
      oc.zeta = o.number("zeta", oc.zeta);
      oc.coupling = o.number("coupling", oc.coupling);
      oc.lambda = o.number("lambda", oc.lambda);
      oc.dt = o.number("dt", oc.dt);
      o.finish();
    }
  }
  s.finish();
  return p;
}

ControllerSpec parse_controller(const json& j, const std::string& path) {
  Section s(j, path);
  ControllerSpec c;
  const std::string kind = s.text("kind", "onedim_bank");
  if (kind == "onedim_bank") c.kind = ControllerSpec::Kind::onedim_bank;
  else if (kind == "neural") c.kind = ControllerSpec::Kind::neural;
  else if (kind == "random") c.kind = ControllerSpec::Kind::random;
  else
    throw ContractError(s.loc("kind") + ": unknown controller kind '" + kind +
                        "'");
  c.init_c = s.number("init_c", c.init_c);
  c.init_h = s.number("init_h", c.init_h);
  c.jitter_c = s.number("jitter_c", c.jitter_c);
  c.jitter_h = s.number("jitter_h", c.jitter_h);
  c.init_v = s.number("init_v", c.init_v);
  c.init_t = s.number("init_t", c.init_t);
  c.init_b = s.number("init_b", c.init_b);
  c.activation = s.text("activation", c.activation);
  require(c.activation == "tanh",
          s.loc("activation") + ": only 'tanh' is configurable");
  s.finish();
  return c;
}

ExplorationConfig parse_exploration(const json& j, const std::string& path) {
  Section s(j, path);
  ExplorationConfig e;
  const std::string mode = s.text("mode", "onedim_deterministic");
  if (mode == "neural_tau2") e.mode = ExplorationConfig::Mode::neural_tau2;
  else if (mode == "general_tau") e.mode = ExplorationConfig::Mode::general_tau;
  else if (mode == "onedim_deterministic")
    e.mode = ExplorationConfig::Mode::onedim_deterministic;
  else
    throw ContractError(s.loc("mode") + ": unknown mode '" + mode + "'");
  e.epsilon = s.number("epsilon", e.epsilon);
  e.tau = static_cast<int>(s.integer("tau", e.tau));
  e.alpha = s.number("alpha", e.alpha);
  e.eta = s.number("eta", e.eta);
  e.eta_phi = s.number("eta_phi", e.eta_phi);
  e.fixed_c = s.boolean("fixed_c", e.fixed_c);
  s.finish();
  return e;
}

RunSpec parse_run(const json& j, const std::string& path) {
  Section s(j, path);
  RunSpec r;
  r.steps = s.integer("steps", 0);
  if (s.has("seed")) {
    r.seed = static_cast<std::uint64_t>(s.integer("seed", 0));
    r.seed_set = true;
  }
  r.log_every = static_cast<int>(s.integer("log_every", 1));
  r.out = s.text("out", "");
  s.finish();
  return r;
}

ExperimentConfig parse_config_json(const json& j) {
  Section s(j, "config");
  ExperimentConfig c;
  if (const json* p = s.object("plant")) c.plant = parse_plant(*p, "plant");
  if (const json* p = s.object("controller"))
    c.controller = parse_controller(*p, "controller");
  if (const json* p = s.object("exploration"))
    c.exploration = parse_exploration(*p, "exploration");
  if (const json* p = s.object("run")) c.run = parse_run(*p, "run");
  s.finish();
  c.validate();
  return c;
}

json config_to_json_value(const ExperimentConfig& c) {
  json j;
  json& p = j["plant"];
  switch (c.plant.kind) {
    case PlantSpec::Kind::loop:
      p["kind"] = "loop";
      p["dim"] = c.plant.loop_dim;
      p["lambda"] = c.plant.loop_lambda;
      if (!c.plant.loop_s0.empty()) p["s0"] = c.plant.loop_s0;
      break;
    case PlantSpec::Kind::chain: {
      p["kind"] = "chain";
      json& cc = p["chain"];
      cc["segments"] = c.plant.chain.segments;
      cc["mass"] = c.plant.chain.mass;
      cc["stiffness"] = c.plant.chain.stiffness;
      cc["damping"] = c.plant.chain.damping;
      cc["rest_min"] = c.plant.chain.rest_min;
      cc["rest_max"] = c.plant.chain.rest_max;
      cc["mu_forward"] = c.plant.chain.mu_forward;
      cc["mu_backward"] = c.plant.chain.mu_backward;
      cc["gravity"] = c.plant.chain.gravity;
      cc["v_eps"] = c.plant.chain.v_eps;
      cc["servo_tc"] = c.plant.chain.servo_tc;
      cc["force_max"] = c.plant.chain.force_max;
      cc["dt"] = c.plant.chain.dt;
      if (!c.plant.pose_offsets.empty()) p["pose_offsets"] = c.plant.pose_offsets;
      if (c.plant.pose_jitter != 0.0) p["pose_jitter"] = c.plant.pose_jitter;
      break;
    }
    case PlantSpec::Kind::oscillator: {
      p["kind"] = "oscillator";
      json& oc = p["oscillator"];
      oc["omega0"] = c.plant.oscillator.omega0;
      oc["zeta"] = c.plant.oscillator.zeta;
      oc["coupling"] = c.plant.oscillator.coupling;
      oc["lambda"] = c.plant.oscillator.lambda;
      oc["dt"] = c.plant.oscillator.dt;
      break;
    }
  }
  json& ct = j["controller"];
  switch (c.controller.kind) {
    case ControllerSpec::Kind::onedim_bank: ct["kind"] = "onedim_bank"; break;
    case ControllerSpec::Kind::neural: ct["kind"] = "neural"; break;
    case ControllerSpec::Kind::random: ct["kind"] = "random"; break;
  }
  ct["init_c"] = c.controller.init_c;
  ct["init_h"] = c.controller.init_h;
  if (c.controller.jitter_c != 0.0) ct["jitter_c"] = c.controller.jitter_c;
  if (c.controller.jitter_h != 0.0) ct["jitter_h"] = c.controller.jitter_h;
  ct["init_v"] = c.controller.init_v;
  ct["init_t"] = c.controller.init_t;
  ct["init_b"] = c.controller.init_b;
  ct["activation"] = c.controller.activation;

  json& e = j["exploration"];
  switch (c.exploration.mode) {
    case ExplorationConfig::Mode::neural_tau2: e["mode"] = "neural_tau2"; break;
    case ExplorationConfig::Mode::general_tau: e["mode"] = "general_tau"; break;
    case ExplorationConfig::Mode::onedim_deterministic:
      e["mode"] = "onedim_deterministic";
      break;
  }
  e["epsilon"] = c.exploration.epsilon;
  e["tau"] = c.exploration.tau;
  e["alpha"] = c.exploration.alpha;
  e["eta"] = c.exploration.eta;
  e["eta_phi"] = c.exploration.eta_phi;
  if (c.exploration.fixed_c) e["fixed_c"] = true;

  json& r = j["run"];
  r["steps"] = c.run.steps;
  if (c.run.seed_set) r["seed"] = c.run.seed;
  r["log_every"] = c.run.log_every;
  if (!c.run.out.empty()) r["out"] = c.run.out;
  return j;
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ContractError(std::string("config: JSON parse error: ") + e.what());
  }
  return parse_config_json(j);
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

SweepSpec parse_sweep(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ContractError(std::string("sweep: JSON parse error: ") + e.what());
  }
  Section s(j, "sweep");
  SweepSpec spec;
  const json* base = s.object("base");
  require(base != nullptr, "sweep.base: missing required section");
  spec.base = parse_config_json(*base);
  const json* sw = s.object("sweep");
  require(sw != nullptr, "sweep.sweep: missing required section");
  Section ss(*sw, "sweep.sweep");
  spec.parameter = ss.text("parameter", "exploration.epsilon");
  spec.values = ss.number_list("values");
  spec.replicates = static_cast<int>(ss.integer("replicates", 1));
  spec.metric = ss.text("metric", "displacement");
  ss.finish();
  s.finish();
  spec.validate();
  return spec;
}

SweepSpec parse_sweep_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "sweep: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sweep(ss.str());
}

std::string config_to_json(const ExperimentConfig& config) {
  return config_to_json_value(config).dump(2);
}

std::string sweep_to_json(const SweepSpec& spec) {
  json j;
  j["base"] = config_to_json_value(spec.base);
  json& s = j["sweep"];
  s["parameter"] = spec.parameter;
  s["values"] = spec.values;
  s["replicates"] = spec.replicates;
  s["metric"] = spec.metric;
  return j.dump(2);
}

} // namespace tipi::harness
