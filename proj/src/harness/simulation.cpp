#include "tipi/harness/simulation.hpp"

#include <cmath>

#include "tipi/estimator.hpp"
#include "tipi/gradient.hpp"
#include "tipi/window.hpp"

namespace tipi::harness {

namespace {

std::vector<std::string> indexed(const std::string& base, Eigen::Index k) {
  std::vector<std::string> out;
  if (k == 1) {
    out.push_back(base);
    return out;
  }
  for (Eigen::Index i = 0; i < k; ++i)
    out.push_back(base + "_" + std::to_string(i));
  return out;
}

} // namespace

Simulation::Simulation(const ExperimentConfig& config)
    : config_(config),
      plant_(plants::LoopPlant(1, 0.0, 0)) // replaced below
{
  config_.validate();
  const std::uint64_t seed = config_.run.seed;
  const Eigen::Index n = config_.plant.n_sensors();
  const Eigen::Index m = config_.plant.n_motors();
  GaussianRng init_rng(derive_seed(seed, 2));

  // plant
  switch (config_.plant.kind) {
    case PlantSpec::Kind::loop:
      plant_ = plants::LoopPlant(n, config_.plant.loop_lambda,
                                 derive_seed(seed, 1));
      break;
    case PlantSpec::Kind::chain: {
      auto chain = std::make_unique<plants::ChainPlant>(config_.plant.chain);
      VectorXd offsets = VectorXd::Zero(config_.plant.chain.segments);
      for (std::size_t i = 0; i < config_.plant.pose_offsets.size(); ++i)
        offsets[i] = config_.plant.pose_offsets[i];
      if (config_.plant.pose_jitter > 0.0)
        for (Eigen::Index i = 0; i < offsets.size(); ++i)
          offsets[i] += init_rng.uniform(-config_.plant.pose_jitter,
                                         config_.plant.pose_jitter);
      if (offsets.cwiseAbs().maxCoeff() > 0.0)
        chain->perturb_positions(offsets);
      plant_ = std::move(chain);
      break;
    }
    case PlantSpec::Kind::oscillator:
      plant_ = plants::OscillatorPlant(config_.plant.oscillator,
                                       derive_seed(seed, 1));
      break;
  }

  // initial sensor value
  switch (config_.plant.kind) {
    case PlantSpec::Kind::loop: {
      s_cur_ = VectorXd::Zero(n);
      for (std::size_t i = 0; i < config_.plant.loop_s0.size(); ++i)
        s_cur_[i] = config_.plant.loop_s0[i];
      break;
    }
    case PlantSpec::Kind::chain:
      s_cur_ = std::get<std::unique_ptr<plants::ChainPlant>>(plant_)->sensors();
      break;
    case PlantSpec::Kind::oscillator: {
      s_cur_ = VectorXd::Zero(1);
      break;
    }
  }

  // controller
  const ControllerSpec& cs = config_.controller;
  switch (cs.kind) {
    case ControllerSpec::Kind::onedim_bank: {
      BankState b;
      b.c = VectorXd::Constant(m, cs.init_c);
      b.h = VectorXd::Constant(m, cs.init_h);
      for (Eigen::Index i = 0; i < m; ++i) {
        if (cs.jitter_c > 0.0)
          b.c[i] += init_rng.uniform(-cs.jitter_c, cs.jitter_c);
        if (cs.jitter_h > 0.0)
          b.h[i] += init_rng.uniform(-cs.jitter_h, cs.jitter_h);
      }
      controller_ = std::move(b);
      break;
    }
    case ControllerSpec::Kind::neural: {
      NeuralState ns;
      ns.params.C = cs.init_c * MatrixXd::Identity(m, n);
      ns.params.h = VectorXd::Constant(m, cs.init_h);
      if (cs.jitter_c > 0.0)
        for (Eigen::Index i = 0; i < m; ++i)
          for (Eigen::Index j = 0; j < n; ++j)
            ns.params.C(i, j) += init_rng.uniform(-cs.jitter_c, cs.jitter_c);
      if (cs.jitter_h > 0.0)
        for (Eigen::Index i = 0; i < m; ++i)
          ns.params.h[i] += init_rng.uniform(-cs.jitter_h, cs.jitter_h);
      ns.model.V = cs.init_v * MatrixXd::Identity(n, m);
      ns.model.T = cs.init_t * MatrixXd::Identity(n, n);
      ns.model.b = VectorXd::Constant(n, cs.init_b);
      // the model validates a positive rate; the value is unused when
      // eta_phi = 0 disables model updates altogether
      ns.model.eta_phi =
          config_.exploration.eta_phi > 0.0 ? config_.exploration.eta_phi : 1.0;
      const double lam = config_.plant.kind == PlantSpec::Kind::loop
                             ? config_.plant.loop_lambda
                             : 0.0;
      ns.tracker = std::make_unique<CovTracker>(
          n, config_.exploration.eta, 1e-8, lam * lam, 1000);
      ns.xi_tracker = std::make_unique<CovTracker>(
          n, config_.exploration.eta, 1e-12, lam * lam, 1000);
      controller_ = std::move(ns);
      break;
    }
    case ControllerSpec::Kind::random:
      controller_ = RandomState{GaussianRng(derive_seed(seed, 3))};
      break;
  }

  history_.push_back(s_cur_);
  a_cur_ = act(s_cur_);

  // log schema
  std::vector<std::string> cols{"t"};
  for (const auto& c : indexed("s", n)) cols.push_back(c);
  for (const auto& c : indexed("a", m)) cols.push_back(c);
  if (cs.kind == ControllerSpec::Kind::onedim_bank) {
    for (const auto& c : indexed("C", m)) cols.push_back(c);
    for (const auto& c : indexed("h", m)) cols.push_back(c);
  } else if (cs.kind == ControllerSpec::Kind::neural) {
    if (n == 1 && m == 1) {
      cols.push_back("C");
      cols.push_back("h");
    } else {
      for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          cols.push_back("C_" + std::to_string(i) + "_" + std::to_string(j));
      for (const auto& c : indexed("h", m)) cols.push_back(c);
    }
  }
  cols.push_back("tipi");
  if (cs.kind == ControllerSpec::Kind::neural) {
    cols.push_back("tipi_sampled");
    cols.push_back("delta_norm_sigma");
  }
  cols.push_back("xi_norm");
  if (cs.kind != ControllerSpec::Kind::random) cols.push_back("gamma_norm");
  if (config_.plant.kind == PlantSpec::Kind::chain) cols.push_back("com_x");
  log_ = analysis::BehaviorLog(cols);
}

double Simulation::center_of_mass() const {
  const auto* chain = std::get_if<std::unique_ptr<plants::ChainPlant>>(&plant_);
  require(chain != nullptr,
          "center_of_mass: metric undefined for this plant kind");
  return (*chain)->center_of_mass();
}

VectorXd Simulation::act(const VectorXd& s) {
  return std::visit(
      [&](auto& c) -> VectorXd {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, BankState>) {
          VectorXd a(c.c.size());
          for (Eigen::Index i = 0; i < a.size(); ++i)
            a[i] = std::tanh(c.c[i] * s[i] + c.h[i]);
          return a;
        } else if constexpr (std::is_same_v<T, NeuralState>) {
          return controller_forward(c.params, s);
        } else {
          VectorXd a(config_.plant.n_motors());
          for (Eigen::Index i = 0; i < a.size(); ++i)
            a[i] = c.rng.uniform(-1.0, 1.0);
          return a;
        }
      },
      controller_);
}

void Simulation::observe(const VectorXd& s_new) {
  const ExplorationConfig& ec = config_.exploration;
  diag_tipi_ = std::numeric_limits<double>::quiet_NaN();
  diag_tipi_sampled_ = std::numeric_limits<double>::quiet_NaN();
  diag_xi_norm_ = std::numeric_limits<double>::quiet_NaN();
  diag_delta_norm_sigma_ = std::numeric_limits<double>::quiet_NaN();
  diag_gamma_norm_ = std::numeric_limits<double>::quiet_NaN();

  if (auto* bank = std::get_if<BankState>(&controller_)) {
    const VectorXd& s_prev = history_.back();
    double tipi_acc = 0.0, gamma_sq = 0.0;
    for (Eigen::Index i = 0; i < bank->c.size(); ++i) {
      const OnedimUpdate u = onedim_param_update(
          s_prev[i], s_new[i], bank->c[i], bank->h[i], ec.epsilon, ec.alpha,
          ec.fixed_c);
      bank->c[i] = u.c_next;
      bank->h[i] = u.h_next;
      tipi_acc += u.tipi;
      gamma_sq += u.gamma * u.gamma;
    }
    diag_tipi_ = tipi_acc / static_cast<double>(bank->c.size());
    diag_gamma_norm_ = std::sqrt(gamma_sq);
    // for the bank the reference model is the identity loop s ~ a
    diag_xi_norm_ = (s_new - a_cur_).norm();
  } else if (auto* ns = std::get_if<NeuralState>(&controller_)) {
    if (static_cast<int>(history_.size()) >= ec.tau) {
      std::vector<VectorXd> states(history_.end() - ec.tau, history_.end());
      states.push_back(s_new);
      const TipiWindow w = build_window(states, ns->params, ns->model);
      ns->tracker->update(w.delta_now());
      GradResult g;
      if (ec.mode == ExplorationConfig::Mode::neural_tau2) {
        g = grad_tau2(ns->params, ns->model, w.states[w.tau - 1],
                      w.delta_now(), w.delta_prev(), ns->tracker->sigma_inv(),
                      ec);
      } else {
        g = grad_general(w, ns->tracker->sigma_inv(), ns->params, ns->model,
                         ec);
      }
      if (!ec.fixed_c) ns->params.C += g.dC;
      ns->params.h += g.dh;
      const Eigen::Index n = s_new.size();
      diag_tipi_ = whitened_tipi(w.jacobians_recent_first(),
                                 MatrixXd::Identity(n, n), ec.tau);
      ns->xi_tracker->update(w.residuals.back());
      try {
        diag_tipi_sampled_ =
            tipi_gaussian(ns->tracker->sigma(), ns->xi_tracker->sigma());
      } catch (const NumericError&) {
        // tracked covariances can underflow on fully quiescent loops;
        // the estimate is simply undefined there
      }
      diag_xi_norm_ = w.residuals.back().norm();
      diag_delta_norm_sigma_ =
          w.delta_now().dot(ns->tracker->sigma_inv() * w.delta_now());
      diag_gamma_norm_ = g.aux.gamma.norm();
    }
    if (ec.eta_phi > 0.0)
      model_update(ns->model, history_.back(), a_cur_, s_new);
  }
  // the random controller has no adaptive state
}

void Simulation::append_log_row() {
  std::vector<double> row;
  row.push_back(static_cast<double>(t_));
  for (Eigen::Index i = 0; i < s_cur_.size(); ++i) row.push_back(s_cur_[i]);
  for (Eigen::Index i = 0; i < a_cur_.size(); ++i) row.push_back(a_cur_[i]);
  if (const auto* bank = std::get_if<BankState>(&controller_)) {
    for (Eigen::Index i = 0; i < bank->c.size(); ++i) row.push_back(bank->c[i]);
    for (Eigen::Index i = 0; i < bank->h.size(); ++i) row.push_back(bank->h[i]);
  } else if (const auto* ns = std::get_if<NeuralState>(&controller_)) {
    for (Eigen::Index i = 0; i < ns->params.C.rows(); ++i)
      for (Eigen::Index j = 0; j < ns->params.C.cols(); ++j)
        row.push_back(ns->params.C(i, j));
    for (Eigen::Index i = 0; i < ns->params.h.size(); ++i)
      row.push_back(ns->params.h[i]);
  }
  row.push_back(diag_tipi_);
  if (config_.controller.kind == ControllerSpec::Kind::neural) {
    row.push_back(diag_tipi_sampled_);
    row.push_back(diag_delta_norm_sigma_);
  }
  row.push_back(diag_xi_norm_);
  if (config_.controller.kind != ControllerSpec::Kind::random)
    row.push_back(diag_gamma_norm_);
  if (config_.plant.kind == PlantSpec::Kind::chain)
    row.push_back(center_of_mass());
  log_.append(row);
}

void Simulation::step() {
  VectorXd s_new = std::visit(
      [&](auto& p) -> VectorXd {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, std::unique_ptr<plants::ChainPlant>>)
          return p->step(a_cur_);
        else
          return p.step(a_cur_);
      },
      plant_);

  observe(s_new);

  history_.push_back(s_new);
  const int keep = config_.exploration.tau + 1;
  while (static_cast<int>(history_.size()) > keep) history_.pop_front();

  s_cur_ = s_new;
  a_cur_ = act(s_cur_);
  ++t_;
  if (t_ % config_.run.log_every == 0) append_log_row();
}

void Simulation::run_steps(long n) {
  for (long i = 0; i < n; ++i) step();
}

void Simulation::run_all() { run_steps(config_.run.steps - t_); }

analysis::BehaviorLog run(const ExperimentConfig& config) {
  Simulation sim(config);
  sim.run_all();
  return sim.log();
}

} // namespace tipi::harness
