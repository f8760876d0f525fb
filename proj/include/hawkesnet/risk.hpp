#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hawkesnet/limit.hpp"
#include "hawkesnet/network.hpp"

namespace hawkesnet {

struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

struct RiskReport {
  Estimate sr;
  std::vector<double> add;  // ADD(t) on the run grid
  Estimate add_terminal;
  std::size_t n_runs = 0;
  std::string fingerprint;
};

// Expected fraction of banks whose running minimum is <= D; SE = sample sd / sqrt(runs).
// Throws std::invalid_argument on an empty run list or inconsistent bank counts.
Estimate sr_mc(std::span<const RunSummary> runs, double D);
Estimate sr_mc(std::span<const SimOutput> runs, double D);

// Grand mean of reserves at grid time t. Throws if t is not a grid point.
Estimate add_mc(std::span<const RunSummary> runs, std::span<const double> grid, double t);
Estimate add_mc(std::span<const SimOutput> runs, double t);

// Full ADD curve and terminal SE from a batch.
RiskReport risk_report(std::span<const RunSummary> runs, std::span<const double> grid, double D);

// Fraction of limit paths whose running minimum is <= D.
Estimate sr_lln(const LimitEnsemble& ensemble, double D);

// Q_1(t) read off the curve grid. Throws if t is not a grid point.
double add_lln(const LimitCurves& curves, double t);

// Empirical pmf of the number of defaulted banks per run, over {0, ..., M}.
std::vector<double> default_count_distribution(std::span<const RunSummary> runs, double D);
std::vector<double> default_count_distribution(std::span<const SimOutput> runs, double D);
std::vector<std::size_t> default_counts(std::span<const RunSummary> runs, double D);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

// Two-sample chi-square homogeneity test on histograms over the same bins.
// Adjacent bins are pooled until each pooled bin expects at least 5 counts in
// both samples.
ChiSquareResult chi_square_homogeneity(std::span<const std::size_t> first,
                                       std::span<const std::size_t> second);

enum class Tail { upper, lower };

struct DependenceCurve {
  std::vector<double> q_grid;
  std::vector<double> p_of_q;
  Tail tail = Tail::upper;
};

// p(q) = P(X_i > F_i^{-1}(q) | X_j > F_j^{-1}(q)) after an empirical rank
// transform to unit Frechet margins z = -1/log(u), u = rank / (n + 1) with
// ties sharing their largest rank. The lower tail negates both samples.
// Throws std::invalid_argument for fewer than 100 samples, unequal lengths,
// or q outside (0, 1).
DependenceCurve tail_dependence(std::span<const double> samples_i, std::span<const double> samples_j,
                                std::span<const double> q_grid, Tail tail);

struct FluctuationRow {
  std::size_t M = 0;
  double variance = 0.0;  // sample variance of sqrt(M) (mean_T - Q_1(T))
  double mean = 0.0;
};

// For every M: sample variance across runs of sqrt(M) (X-bar_T - Q_1(T)), with
// Q_1 from the closed-form limit of the template's parameters.
std::vector<FluctuationRow> fluctuation_scaling(const HomogeneousNetwork& net,
                                                std::span<const std::size_t> M_list,
                                                std::size_t n_runs, std::uint64_t seed,
                                                unsigned workers = 0);

// Limit parameters matching a homogeneous network (kernel alpha / M convention).
LimitParams limit_params(const HomogeneousNetwork& net);

}  // namespace hawkesnet
