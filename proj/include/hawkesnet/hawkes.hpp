#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hawkesnet/matrix.hpp"
#include "hawkesnet/rng.hpp"

namespace hawkesnet {

// Multivariate linear Hawkes process with exponential kernels
//   lambda_i(t) = mu_i + sum_k alpha(i, n_k) exp(-beta_i (t - t_k)).
struct HawkesSpec {
  std::vector<double> mu;
  Matrix alpha;  // alpha(i, j): jump of lambda_i caused by an event on node j
  std::vector<double> beta;

  std::size_t size() const { return mu.size(); }

  // Throws std::invalid_argument on negative rates, non-positive decays or
  // mismatched dimensions.
  void validate() const;

  // Same baseline, excitation and decay on every node and pair.
  static HawkesSpec uniform(std::size_t nodes, double mu, double alpha, double beta);
};

struct Event {
  double time = 0.0;
  std::size_t node = 0;
  // Left-limit intensity of `node` at `time`, as seen by the thinning step.
  double intensity = 0.0;
};

struct EventLog {
  std::vector<Event> events;  // strictly increasing times in (0, horizon]
  double horizon = 0.0;
  bool supercritical = false;  // branching matrix spectral radius >= 1

  std::vector<std::size_t> counts(std::size_t nodes) const;
};

// Markov state of the intensity: per-node excitation above baseline.
class IntensityState {
 public:
  explicit IntensityState(std::size_t nodes) : excess_(nodes, 0.0) {}

  // Decay every component from last_time() to t (t >= last_time()).
  void decay_to(double t, std::span<const double> beta);
  // Add column `node` of alpha to the excitation.
  void excite(const Matrix& alpha, std::size_t node);

  double total(std::span<const double> mu) const;
  double intensity(std::size_t i, std::span<const double> mu) const { return mu[i] + excess_[i]; }
  std::span<const double> excess() const { return excess_; }
  double last_time() const { return last_time_; }

 private:
  std::vector<double> excess_;
  double last_time_ = 0.0;
};

// Integrals of the kernels: entry (i, j) = alpha(i, j) / beta_i.
Matrix branching_matrix(const HawkesSpec& spec);

// Perron root of a square nonnegative matrix by power iteration on (A + I),
// relative tolerance 1e-10. Throws std::runtime_error after 1e5 iterations.
double spectral_radius(const Matrix& matrix);

// Ogata thinning sampler. Construction validates the spec and evaluates the
// branching ratio once, so repeated simulations stay O(events * nodes).
class HawkesSimulator {
 public:
  explicit HawkesSimulator(HawkesSpec spec);

  const HawkesSpec& spec() const { return spec_; }
  double branching_radius() const { return radius_; }
  bool supercritical() const { return radius_ >= 1.0; }

  // Throws std::invalid_argument if horizon <= 0.
  EventLog simulate(double horizon, Engine& engine) const;
  EventLog simulate(double horizon, std::uint64_t seed) const;

 private:
  HawkesSpec spec_;
  double radius_ = 0.0;
};

EventLog simulate_hawkes(const HawkesSpec& spec, double horizon, std::uint64_t seed);

// Left-limit intensities lambda_i(t-) on an increasing grid: nodes x grid.
// Throws std::invalid_argument if the grid is not non-decreasing.
Matrix intensity_path(const HawkesSpec& spec, const EventLog& log, std::span<const double> grid);

// Compensator int_0^t lambda_i(s) ds for every node, evaluated in closed form.
std::vector<double> compensator(const HawkesSpec& spec, const EventLog& log, double t);

}  // namespace hawkesnet
