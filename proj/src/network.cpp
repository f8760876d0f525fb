#include "hawkesnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "hawkesnet/parallel.hpp"

namespace hawkesnet {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

// Splits an increment `total` over n substeps of length h: exact conditional
// Brownian increments given their sum.
void bridge_split(double total, double h, std::size_t n, Engine& engine,
                  std::normal_distribution<double>& normal, std::vector<double>& out) {
  out.resize(n);
  if (n == 1) {
    out[0] = total;
    return;
  }
  const double sd = std::sqrt(h);
  double mean = 0.0;
  for (auto& z : out) {
    z = sd * normal(engine);
    mean += z;
  }
  mean /= static_cast<double>(n);
  const double share = total / static_cast<double>(n);
  for (auto& z : out) z = z - mean + share;
}

}  // namespace

double SizeDistribution::mean() const {
  double m = 0.0;
  switch (kind) {
    case Kind::point: m = p1; break;
    case Kind::uniform: m = 0.5 * (p1 + p2); break;
    case Kind::lognormal: m = std::exp(p1 + 0.5 * p2 * p2); break;
  }
  return mirrored ? -m : m;
}

double SizeDistribution::sample(Engine& engine) const {
  double z = 0.0;
  switch (kind) {
    case Kind::point: z = p1; break;
    case Kind::uniform: z = std::uniform_real_distribution<double>(p1, p2)(engine); break;
    case Kind::lognormal: z = std::lognormal_distribution<double>(p1, p2)(engine); break;
  }
  return mirrored ? -z : z;
}

void SizeDistribution::validate() const {
  require(std::isfinite(p1) && std::isfinite(p2), "jump size distribution: non-finite parameter");
  if (kind == Kind::uniform) require(p1 <= p2, "jump size distribution: uniform needs lo <= hi");
  if (kind == Kind::lognormal) require(p2 >= 0.0, "jump size distribution: lognormal needs s >= 0");
}

double FactorSpec::b0(double y) const {
  switch (drift) {
    case Drift::zero: return 0.0;
    case Drift::constant: return drift_p1;
    case Drift::mean_reverting: return drift_p1 * (drift_p2 - y);
  }
  return 0.0;
}

double FactorSpec::sigma0(double y) const {
  return vol == Vol::constant ? vol_param : vol_param * std::abs(y);
}

void NetworkSpec::validate() const {
  require(M >= 1, "network: M must be >= 1");
  require(banks.size() == M, "network: expected " + std::to_string(M) + " bank parameter sets");
  require(x0.size() == M, "network: expected " + std::to_string(M) + " initial reserves");
  require(rho >= 0.0 && rho <= 1.0, "network: rho must lie in [0, 1]");
  require(steps >= 1, "network: steps must be >= 1");
  require(substeps >= 1, "network: substeps must be >= 1");
  require(T > 0.0 && std::isfinite(T), "network: T must be > 0");
  require(std::isfinite(D) || D == -std::numeric_limits<double>::infinity(),
          "network: D must be a real number");
  for (std::size_t i = 0; i < M; ++i) {
    const auto& b = banks[i];
    const std::string who = "network: bank " + std::to_string(i) + ": ";
    require(b.a >= 0.0, who + "a must be >= 0");
    require(b.sigma >= 0.0, who + "sigma must be >= 0");
    require(b.c_hat <= 0.0, who + "c_hat must be <= 0");
    require(std::isfinite(b.factor_loading), who + "factor_loading must be finite");
    require(b.a <= param_cap && b.sigma <= param_cap && -b.c_hat <= param_cap &&
                std::abs(b.factor_loading) <= param_cap,
            who + "parameter exceeds the cap C_p");
    require(std::isfinite(x0[i]), who + "x0 must be finite");
  }
  switch (jump.kind) {
    case JumpKind::none: break;
    case JumpKind::poisson:
      require(jump.poisson_rate >= 0.0 && std::isfinite(jump.poisson_rate),
              "network: poisson rate must be >= 0");
      break;
    case JumpKind::compound_hawkes:
      jump.sizes.validate();
      [[fallthrough]];
    case JumpKind::hawkes:
      jump.hawkes.validate();
      require(jump.hawkes.size() == M, "network: Hawkes dimension must equal M");
      break;
  }
  if (factor) {
    require(std::isfinite(factor->y0) && std::isfinite(factor->vol_param) &&
                std::isfinite(factor->drift_p1) && std::isfinite(factor->drift_p2),
            "network: factor parameters must be finite");
  }
}

std::vector<double> NetworkSpec::grid() const {
  std::vector<double> g(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) g[k] = T * static_cast<double>(k) / static_cast<double>(steps);
  return g;
}

NetworkSimulator::NetworkSimulator(NetworkSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  if (spec_.jump.kind == JumpKind::hawkes || spec_.jump.kind == JumpKind::compound_hawkes) {
    hawkes_.emplace(spec_.jump.hawkes);
  }
}

bool NetworkSimulator::jumps_supercritical() const { return hawkes_ && hawkes_->supercritical(); }

EventLog NetworkSimulator::sample_jumps(std::uint64_t seed) const {
  Engine engine = make_engine(seed, Stream::jumps);
  switch (spec_.jump.kind) {
    case JumpKind::none: {
      EventLog log;
      log.horizon = spec_.T;
      return log;
    }
    case JumpKind::poisson: {
      // Independent per-bank exponential clocks, merged.
      EventLog log;
      log.horizon = spec_.T;
      const double rate = spec_.jump.poisson_rate;
      if (rate > 0.0) {
        std::exponential_distribution<double> wait(rate);
        for (std::size_t i = 0; i < spec_.M; ++i) {
          for (double t = wait(engine); t <= spec_.T; t += wait(engine)) {
            log.events.push_back(Event{t, i, rate});
          }
        }
        std::stable_sort(log.events.begin(), log.events.end(),
                         [](const Event& l, const Event& r) { return l.time < r.time; });
      }
      return log;
    }
    case JumpKind::hawkes:
    case JumpKind::compound_hawkes:
      return hawkes_->simulate(spec_.T, engine);
  }
  return {};
}

SimOutput NetworkSimulator::run(std::uint64_t seed) const {
  const auto& s = spec_;
  const std::size_t m = s.M;
  const std::size_t n_sub = s.substeps;
  const double dt = s.T / static_cast<double>(s.steps);
  const double h = dt / static_cast<double>(n_sub);
  const std::size_t total_substeps = s.steps * n_sub;
  const double common = s.rho;
  const double idio = std::sqrt(1.0 - s.rho * s.rho);

  SimOutput out;
  out.grid = s.grid();
  out.jump_log = sample_jumps(seed);

  // Reserve change of every jump, binned to the Euler substep containing it.
  std::vector<double> jump_size(out.jump_log.events.size());
  {
    Engine marks = make_engine(seed, Stream::marks);
    for (std::size_t k = 0; k < jump_size.size(); ++k) {
      const std::size_t bank = out.jump_log.events[k].node;
      double z = 1.0;
      if (s.jump.kind == JumpKind::compound_hawkes) z = s.jump.sizes.sample(marks);
      jump_size[k] = s.banks[bank].c_hat * z;
    }
  }
  auto substep_of = [&](double t) {
    const auto idx = static_cast<std::size_t>(std::floor(t / h));
    return std::min(idx, total_substeps - 1);
  };

  Engine brownian = make_engine(seed, Stream::brownian);
  Engine factor_engine = make_engine(seed, Stream::factor);
  Engine refine = make_engine(seed, Stream::refine);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::normal_distribution<double> factor_normal(0.0, 1.0);
  std::normal_distribution<double> refine_normal(0.0, 1.0);
  const double sd = std::sqrt(dt);

  out.paths = Matrix(m, s.steps + 1);
  std::vector<double> x(s.x0);
  for (std::size_t i = 0; i < m; ++i) out.paths(i, 0) = x[i];
  out.running_min = x;

  double y = s.factor ? s.factor->y0 : 0.0;
  if (s.factor) {
    out.factor_path.resize(s.steps + 1);
    out.factor_path[0] = y;
  }

  std::vector<double> dw(m);
  std::vector<double> w0_sub, v_sub;
  Matrix w_sub(m, n_sub);
  std::vector<double> scratch;
  std::size_t next_jump = 0;

  for (std::size_t k = 0; k < s.steps; ++k) {
    const double dw0 = sd * normal(brownian);
    for (std::size_t i = 0; i < m; ++i) dw[i] = sd * normal(brownian);
    const double dv = s.factor ? sd * factor_normal(factor_engine) : 0.0;

    bridge_split(dw0, h, n_sub, refine, refine_normal, w0_sub);
    for (std::size_t i = 0; i < m; ++i) {
      bridge_split(dw[i], h, n_sub, refine, refine_normal, scratch);
      std::copy(scratch.begin(), scratch.end(), w_sub.row(i).begin());
    }
    if (s.factor) bridge_split(dv, h, n_sub, refine, refine_normal, v_sub);

    for (std::size_t j = 0; j < n_sub; ++j) {
      const std::size_t sub = k * n_sub + j;
      const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(m);
      double dy = 0.0;
      if (s.factor) {
        dy = s.factor->b0(y) * h + s.factor->sigma0(y) * v_sub[j];
        y += dy;
      }
      for (std::size_t i = 0; i < m; ++i) {
        const auto& b = s.banks[i];
        x[i] += b.a * (mean - x[i]) * h + b.sigma * (common * w0_sub[j] + idio * w_sub(i, j)) +
                b.factor_loading * dy;
      }
      while (next_jump < jump_size.size() &&
             substep_of(out.jump_log.events[next_jump].time) == sub) {
        x[out.jump_log.events[next_jump].node] += jump_size[next_jump];
        ++next_jump;
      }
    }

    for (std::size_t i = 0; i < m; ++i) {
      if (!std::isfinite(x[i])) {
        throw NumericalError("simulate_network: non-finite reserve for bank " + std::to_string(i) +
                                 " at step " + std::to_string(k + 1),
                             k + 1);
      }
      out.paths(i, k + 1) = x[i];
      out.running_min[i] = std::min(out.running_min[i], x[i]);
    }
    if (s.factor) out.factor_path[k + 1] = y;
  }
  return out;
}

SimOutput simulate_network(const NetworkSpec& spec, std::uint64_t seed) {
  return NetworkSimulator(spec).run(seed);
}

std::vector<double> empirical_mean_path(const SimOutput& out) {
  const std::size_t m = out.paths.rows();
  std::vector<double> mean(out.paths.cols(), 0.0);
  if (m == 0) return mean;
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = out.paths.row(i);
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += row[k];
  }
  for (auto& v : mean) v /= static_cast<double>(m);
  return mean;
}

RunSummary summarize(const SimOutput& out) {
  RunSummary r;
  r.running_min = out.running_min;
  r.mean_path = empirical_mean_path(out);
  const std::size_t m = out.paths.rows();
  r.initial.resize(m);
  r.terminal.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    r.initial[i] = out.paths(i, 0);
    r.terminal[i] = out.paths(i, out.paths.cols() - 1);
  }
  r.factor_path = out.factor_path;
  r.jump_count = out.jump_log.events.size();
  return r;
}

std::vector<RunSummary> simulate_batch(const NetworkSpec& spec, std::size_t n_runs,
                                       std::uint64_t seed, unsigned workers) {
  const NetworkSimulator sim(spec);
  std::vector<RunSummary> runs(n_runs);
  parallel_for(n_runs, workers, [&](std::size_t j) { runs[j] = summarize(sim.run(path_seed(seed, j))); });
  return runs;
}

HawkesSpec HomogeneousNetwork::hawkes_spec() const {
  const double pair = scaling == KernelScaling::mean_field ? alpha / static_cast<double>(M) : alpha;
  return HawkesSpec::uniform(M, mu, pair, beta);
}

NetworkSpec HomogeneousNetwork::build() const {
  NetworkSpec spec;
  spec.M = M;
  spec.banks.assign(M, bank);
  spec.rho = rho;
  spec.x0.assign(M, x0);
  spec.D = D;
  spec.T = T;
  spec.steps = steps;
  spec.factor = factor;
  spec.jump.kind = jump;
  switch (jump) {
    case JumpKind::none: break;
    case JumpKind::poisson: spec.jump.poisson_rate = mu; break;
    case JumpKind::compound_hawkes:
      spec.jump.sizes = sizes;
      [[fallthrough]];
    case JumpKind::hawkes: spec.jump.hawkes = hawkes_spec(); break;
  }
  return spec;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "no_lending_independent",     "lending_independent",       "no_lending_correlated",
      "lending_correlated",         "lending_correlated_poisson", "lending_correlated_hawkes",
  };
  return names;
}

HomogeneousNetwork scenario(std::string_view name) {
  struct Row {
    const char* name;
    double a, sigma, c, rho;
    JumpKind jump;
  };
  // Jump scenarios list |c| = 0.2; the reserve model needs c < 0.
  static constexpr Row rows[] = {
      {"no_lending_independent", 0.0, 1.0, 0.0, 0.2, JumpKind::none},
      {"lending_independent", 10.0, 1.0, 0.0, 0.0, JumpKind::none},
      {"no_lending_correlated", 0.0, 1.0, 0.0, 0.2, JumpKind::none},
      {"lending_correlated", 10.0, 1.0, 0.0, 0.2, JumpKind::none},
      {"lending_correlated_poisson", 10.0, 1.0, -0.2, 0.2, JumpKind::poisson},
      {"lending_correlated_hawkes", 10.0, 1.0, -0.2, 0.2, JumpKind::hawkes},
  };
  for (const auto& r : rows) {
    if (name != r.name) continue;
    HomogeneousNetwork net;
    net.M = 10;
    const double m = static_cast<double>(net.M);
    net.bank = BankParams{r.a, r.sigma, r.c, 0.0};
    net.x0 = 0.0;
    net.rho = r.rho;
    net.jump = r.jump;
    net.mu = 10.0 / m;
    net.alpha = 2.0 / m;
    net.beta = 2.0 / m;
    net.scaling = HomogeneousNetwork::KernelScaling::raw;
    net.D = -0.7;
    net.T = 1.0;
    net.steps = 100;
    return net;
  }
  std::ostringstream msg;
  msg << "unknown scenario '" << name << "'; valid names:";
  for (const auto& n : scenario_names()) msg << ' ' << n;
  throw std::invalid_argument(msg.str());
}

NetworkSpec scenario_preset(std::string_view name) { return scenario(name).build(); }

}  // namespace hawkesnet
