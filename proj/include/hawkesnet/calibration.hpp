#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

namespace hawkesnet {

struct ObservedSeries {
  std::vector<double> times;   // rebased, times[0] == 0
  std::vector<double> values;
};

// Reads `t,value` (numeric times) or `date,value` (ISO dates, one row per
// trading day, mapped to offsets 0, 1, ...). Lines starting with '#' are
// skipped. Throws std::runtime_error naming the offending row.
ObservedSeries load_series(const std::filesystem::path& path);

// Builds a validated series (>= 10 points, strictly increasing times) rebased to 0.
ObservedSeries make_series(std::vector<double> times, std::vector<double> values);

// Parameters of the deterministic reserve curve Q_1(t; mu, x, alpha, beta, c).
struct Q1Params {
  double mu = 0.0;
  double x = 0.0;
  double alpha = 0.0;
  double beta = 1.0;
  double c = 0.0;

  std::array<double, 5> to_array() const { return {mu, x, alpha, beta, c}; }
  static Q1Params from_array(const std::array<double, 5>& v) { return {v[0], v[1], v[2], v[3], v[4]}; }
};

struct Q1Bounds {
  Q1Params lower;
  Q1Params upper;
};

struct FitOptions {
  std::size_t max_evaluations = 10000;
  double tolerance = 1e-12;  // relative spread of simplex objective values
};

struct CalibResult {
  Q1Params params;
  double sse = 0.0;
  double initial_sse = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  std::size_t restarts = 0;
  bool converged = false;
};

// Q_1 on the given times (closed form).
std::vector<double> q1_values(const Q1Params& p, std::span<const double> times);

double q1_sse(const ObservedSeries& series, const Q1Params& p);

// Wide default box around the parameter domain (mu, alpha >= 0, beta > 0, c <= 0).
Q1Bounds default_bounds(const ObservedSeries& series);

// Bounded Nelder-Mead on the sum of squared residuals. Throws
// std::invalid_argument when the box is empty/outside the parameter domain or
// the guess lies outside it. Non-convergence is reported, not thrown.
CalibResult fit_q1(const ObservedSeries& series, const Q1Params& initial_guess, const Q1Bounds& bounds,
                   const FitOptions& options = {});

// Generic bounded Nelder-Mead with restart-on-stall (vertices clamped to the box).
struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  std::size_t restarts = 0;
  bool converged = false;
};

SimplexResult bounded_nelder_mead(const std::function<double(std::span<const double>)>& f,
                                  std::vector<double> start, std::span<const double> lower,
                                  std::span<const double> upper, const FitOptions& options);

}  // namespace hawkesnet
