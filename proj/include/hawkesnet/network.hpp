#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hawkesnet/hawkes.hpp"
#include "hawkesnet/matrix.hpp"
#include "hawkesnet/rng.hpp"

namespace hawkesnet {

struct BankParams {
  double a = 0.0;      // lending rate towards the ensemble mean
  double sigma = 0.0;  // diffusion volatility
  double c_hat = 0.0;  // reserve change per jump, <= 0
  double factor_loading = 0.0;

  friend bool operator==(const BankParams&, const BankParams&) = default;
};

// Law of the jump multiplier Z in the compound regime.
struct SizeDistribution {
  enum class Kind { point, uniform, lognormal };
  Kind kind = Kind::point;
  double p1 = 1.0;  // point: value; uniform: lo; lognormal: m (log-mean)
  double p2 = 0.0;  // uniform: hi; lognormal: s (log-sd)
  bool mirrored = false;  // return -Z

  double mean() const;
  double sample(Engine& engine) const;
  void validate() const;

  friend bool operator==(const SizeDistribution&, const SizeDistribution&) = default;
};

enum class JumpKind { none, poisson, hawkes, compound_hawkes };

struct JumpRegime {
  JumpKind kind = JumpKind::none;
  double poisson_rate = 0.0;  // per bank
  HawkesSpec hawkes;          // hawkes / compound_hawkes
  SizeDistribution sizes;     // compound_hawkes only
};

// Scalar drift/vol menu for the systematic factor dY = b0(Y) dt + sigma0(Y) dV.
struct FactorSpec {
  enum class Drift { zero, constant, mean_reverting };  // 0 | p1 | p1 * (p2 - y)
  enum class Vol { constant, proportional };            // s | s * |y|
  Drift drift = Drift::zero;
  double drift_p1 = 0.0;
  double drift_p2 = 0.0;
  Vol vol = Vol::constant;
  double vol_param = 0.0;
  double y0 = 0.0;

  double b0(double y) const;
  double sigma0(double y) const;

  friend bool operator==(const FactorSpec&, const FactorSpec&) = default;
};

struct NetworkSpec {
  std::size_t M = 1;
  std::vector<BankParams> banks;
  double rho = 0.0;
  JumpRegime jump;
  std::optional<FactorSpec> factor;
  std::vector<double> x0;
  double D = 0.0;
  double T = 1.0;
  std::size_t steps = 100;
  // Euler substeps per output step. Substep Brownian increments are drawn
  // conditionally on the output-step increment, so runs that differ only in
  // `substeps` share the same driving noise on the output grid.
  std::size_t substeps = 1;
  double param_cap = 1e6;  // C_p: bound on |a|, sigma, |c_hat|, |loading|

  void validate() const;
  std::vector<double> grid() const;
};

struct SimOutput {
  std::vector<double> grid;
  Matrix paths;  // M x (steps + 1)
  EventLog jump_log;
  std::vector<double> running_min;  // per bank, over the grid
  std::vector<double> factor_path;  // steps + 1 values when a factor is configured
};

// Raised when the Euler scheme produces a non-finite reserve.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

// Reusable simulator: validates the spec and prepares the jump sampler once.
class NetworkSimulator {
 public:
  explicit NetworkSimulator(NetworkSpec spec);
  const NetworkSpec& spec() const { return spec_; }
  bool jumps_supercritical() const;

  SimOutput run(std::uint64_t seed) const;

 private:
  EventLog sample_jumps(std::uint64_t seed) const;

  NetworkSpec spec_;
  std::optional<HawkesSimulator> hawkes_;
};

// Euler-Maruyama path of the interacting reserve system driven by `seed`.
SimOutput simulate_network(const NetworkSpec& spec, std::uint64_t seed);

// Cross-sectional mean of the reserves at every grid point.
std::vector<double> empirical_mean_path(const SimOutput& out);

// Per-run reduction kept by batch runs (full paths are dropped).
struct RunSummary {
  std::vector<double> running_min;  // per bank
  std::vector<double> mean_path;    // steps + 1
  std::vector<double> initial;      // per bank, X_0
  std::vector<double> terminal;     // per bank, X_T
  std::vector<double> factor_path;  // empty without factor
  std::size_t jump_count = 0;
};

RunSummary summarize(const SimOutput& out);

// Runs paths 0..n_runs-1 with path_seed(seed, j); result j depends only on (spec, seed, j).
std::vector<RunSummary> simulate_batch(const NetworkSpec& spec, std::size_t n_runs,
                                       std::uint64_t seed, unsigned workers = 0);

// Homogeneous parameterization shared by the CLI, the presets and the
// finite-M vs limit comparisons.
struct HomogeneousNetwork {
  enum class KernelScaling {
    mean_field,  // alpha(i, j) = alpha / M
    raw,         // alpha(i, j) = alpha
  };

  std::size_t M = 300;
  BankParams bank;
  double x0 = 0.0;
  double rho = 0.0;
  JumpKind jump = JumpKind::hawkes;
  double mu = 0.0;
  double alpha = 0.0;
  double beta = 1.0;
  KernelScaling scaling = KernelScaling::mean_field;
  SizeDistribution sizes;
  std::optional<FactorSpec> factor;
  double D = 0.0;
  double T = 1.0;
  std::size_t steps = 100;

  NetworkSpec build() const;
  HawkesSpec hawkes_spec() const;

  friend bool operator==(const HomogeneousNetwork&, const HomogeneousNetwork&) = default;
};

// Names of the interbank scenarios (M = 10, T = 1, 100 steps, D = -0.7).
const std::vector<std::string>& scenario_names();

// Throws std::invalid_argument listing the valid names.
HomogeneousNetwork scenario(std::string_view name);
NetworkSpec scenario_preset(std::string_view name);

}  // namespace hawkesnet
