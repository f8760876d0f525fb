#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "hawkesnet/risk.hpp"

namespace hawkesnet::cli {

// Entry point shared by the executable and the tests. `args` excludes argv[0].
// Returns 0 on success, 1 on configuration errors and 2 on numerical failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct RiskRow {
  double x0 = 0.0;
  Estimate sr_mc;
  Estimate add_mc;  // at T
  Estimate sr_lln;
  double add_lln = 0.0;  // Q_1(T)
};

// One row per x0 (config.x0_grid, or the network's x0 when empty). Rows share
// random numbers: the network batch uses config.seed and the limit ensemble a
// seed derived from it.
std::vector<RiskRow> risk_table(const ExperimentConfig& config);

struct OrderingRow {
  double x0 = 0.0;
  double sr_hawkes = 0.0, sr_poisson = 0.0;
  double add_hawkes = 0.0, add_poisson = 0.0;
};

// LLN indicators for the Hawkes network and its Poisson counterpart (alpha = 0)
// on config.x0_grid, with common random numbers.
std::vector<OrderingRow> hawkes_vs_poisson(const ExperimentConfig& config);

struct ScenarioCounts {
  std::string name;
  std::vector<std::size_t> counts;  // defaults per run
};

std::vector<ScenarioCounts> scenario_default_counts(std::size_t runs, std::uint64_t seed, unsigned workers);

// Canonical configurations behind `reproduce`.
ExperimentConfig table_config(int table);
ExperimentConfig fig2_config();
ExperimentConfig fig5_config();

}  // namespace hawkesnet::cli
