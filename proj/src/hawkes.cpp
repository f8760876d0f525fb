#include "hawkesnet/hawkes.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hawkesnet {

void HawkesSpec::validate() const {
  const std::size_t m = mu.size();
  if (m == 0) throw std::invalid_argument("HawkesSpec: no nodes");
  if (beta.size() != m || alpha.rows() != m || alpha.cols() != m) {
    throw std::invalid_argument("HawkesSpec: dimension mismatch (mu has " + std::to_string(m) +
                                " entries)");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!(mu[i] >= 0.0) || !std::isfinite(mu[i])) {
      throw std::invalid_argument("HawkesSpec: mu[" + std::to_string(i) + "] must be >= 0");
    }
    if (!(beta[i] > 0.0) || !std::isfinite(beta[i])) {
      throw std::invalid_argument("HawkesSpec: beta[" + std::to_string(i) + "] must be > 0");
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (!(alpha(i, j) >= 0.0) || !std::isfinite(alpha(i, j))) {
        throw std::invalid_argument("HawkesSpec: alpha(" + std::to_string(i) + "," +
                                    std::to_string(j) + ") must be >= 0");
      }
    }
  }
}

HawkesSpec HawkesSpec::uniform(std::size_t nodes, double mu, double alpha, double beta) {
  return HawkesSpec{std::vector<double>(nodes, mu), Matrix(nodes, nodes, alpha),
                    std::vector<double>(nodes, beta)};
}

std::vector<std::size_t> EventLog::counts(std::size_t nodes) const {
  std::vector<std::size_t> n(nodes, 0);
  for (const auto& e : events) ++n.at(e.node);
  return n;
}

void IntensityState::decay_to(double t, std::span<const double> beta) {
  const double dt = t - last_time_;
  if (dt > 0.0) {
    for (std::size_t i = 0; i < excess_.size(); ++i) excess_[i] *= std::exp(-beta[i] * dt);
  }
  last_time_ = t;
}

void IntensityState::excite(const Matrix& alpha, std::size_t node) {
  for (std::size_t i = 0; i < excess_.size(); ++i) excess_[i] += alpha(i, node);
}

double IntensityState::total(std::span<const double> mu) const {
  double s = 0.0;
  for (std::size_t i = 0; i < excess_.size(); ++i) s += mu[i] + excess_[i];
  return s;
}

Matrix branching_matrix(const HawkesSpec& spec) {
  spec.validate();
  const std::size_t m = spec.size();
  Matrix phi(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) phi(i, j) = spec.alpha(i, j) / spec.beta[i];
  }
  return phi;
}

double spectral_radius(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n == 0 || a.cols() != n) throw std::invalid_argument("spectral_radius: matrix must be square");
  for (double v : a.data()) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("spectral_radius: matrix must be nonnegative and finite");
    }
  }

  // The shift by I makes the iteration aperiodic (e.g. permutation matrices);
  // the Perron root of A + I is rho(A) + 1.
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  std::vector<double> w(n);
  double previous = std::numeric_limits<double>::infinity();
  constexpr int kMaxIterations = 100000;
  for (int it = 0; it < kMaxIterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = v[i];
      for (std::size_t j = 0; j < n; ++j) s += a(i, j) * v[j];
      w[i] = s;
    }
    const double norm = std::accumulate(w.begin(), w.end(), 0.0);  // v sums to 1
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    if (std::abs(norm - previous) <= 1e-10 * norm) return std::max(0.0, norm - 1.0);
    previous = norm;
  }
  throw std::runtime_error("spectral_radius: power iteration did not converge (degenerate matrix)");
}

HawkesSimulator::HawkesSimulator(HawkesSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  radius_ = spectral_radius(branching_matrix(spec_));
}

EventLog HawkesSimulator::simulate(double horizon, Engine& engine) const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("simulate_hawkes: horizon must be > 0");
  }
  const std::size_t m = spec_.size();
  const std::span<const double> mu = spec_.mu;
  const std::span<const double> beta = spec_.beta;

  EventLog log;
  log.horizon = horizon;
  log.supercritical = supercritical();

  IntensityState state(m);
  std::exponential_distribution<double> wait(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double t = 0.0;
  // Between events the intensity only decays, so the total intensity at the
  // last update bounds it until the next accepted event.
  double bound = state.total(mu);
  while (bound > 0.0) {
    const double w = wait(engine) / bound;
    if (!(w > 0.0) || t + w <= t) continue;
    t += w;
    if (t > horizon) break;

    state.decay_to(t, beta);
    const double total = state.total(mu);
    const double u = unit(engine) * bound;
    if (u < total) {
      // u is uniform on [0, total): reuse it to pick the node.
      std::size_t node = m - 1;
      double cumulative = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        cumulative += state.intensity(i, mu);
        if (u < cumulative) {
          node = i;
          break;
        }
      }
      log.events.push_back(Event{t, node, state.intensity(node, mu)});
      state.excite(spec_.alpha, node);
      bound = state.total(mu);
    } else {
      bound = total;
    }
  }
  return log;
}

EventLog HawkesSimulator::simulate(double horizon, std::uint64_t seed) const {
  Engine engine(seed);
  return simulate(horizon, engine);
}

EventLog simulate_hawkes(const HawkesSpec& spec, double horizon, std::uint64_t seed) {
  return HawkesSimulator(spec).simulate(horizon, seed);
}

Matrix intensity_path(const HawkesSpec& spec, const EventLog& log, std::span<const double> grid) {
  spec.validate();
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (grid[k] < grid[k - 1]) throw std::invalid_argument("intensity_path: grid is not sorted");
  }
  const std::size_t m = spec.size();
  Matrix out(m, grid.size());
  IntensityState state(m);
  std::size_t next = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid[k];
    // Left limit: only events strictly before t contribute.
    while (next < log.events.size() && log.events[next].time < t) {
      state.decay_to(log.events[next].time, spec.beta);
      state.excite(spec.alpha, log.events[next].node);
      ++next;
    }
    state.decay_to(t, spec.beta);
    for (std::size_t i = 0; i < m; ++i) out(i, k) = state.intensity(i, spec.mu);
  }
  return out;
}

std::vector<double> compensator(const HawkesSpec& spec, const EventLog& log, double t) {
  spec.validate();
  const std::size_t m = spec.size();
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = spec.mu[i] * t;
  for (const auto& e : log.events) {
    if (e.time >= t) break;
    const double elapsed = t - e.time;
    for (std::size_t i = 0; i < m; ++i) {
      out[i] += spec.alpha(i, e.node) / spec.beta[i] * -std::expm1(-spec.beta[i] * elapsed);
    }
  }
  return out;
}

}  // namespace hawkesnet
