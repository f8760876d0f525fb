#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hawkesnet/matrix.hpp"

namespace hawkesnet {

// Limit (M -> infinity) parameters of the homogeneous network.
struct LimitParams {
  double mu = 0.0;
  double alpha = 0.0;
  double beta = 1.0;
  double a = 0.0;
  double sigma = 0.0;
  double c = 0.0;
  double x = 0.0;                // initial reserve
  double mean_jump_size = 1.0;   // mean of the compound multiplier
  double factor_loading = 0.0;

  void validate() const;
  friend bool operator==(const LimitParams&, const LimitParams&) = default;
};

enum class LambdaScheme {
  // lambda_{k+1} = lambda_k + dt * g(dt) * lambda_k, Q_{k+1} = Q_k + dt * c * lambda_k.
  paper_euler,
  // Closed-form solution of the Volterra equation; trapezoid rule for Q_1.
  exact,
};

struct LimitCurves {
  std::vector<double> grid;
  std::vector<double> lambda_bar;
  std::vector<double> q1;
};

std::vector<double> uniform_grid(double T, std::size_t steps);

// Closed form lambda_bar(t) = mu [1 + alpha (e^{(alpha-beta)t} - 1) / (alpha - beta)],
// mu (1 + alpha t) when alpha == beta.
double limit_intensity_at(const LimitParams& p, double t);

// Closed form x + c y int_0^t lambda_bar.
double q1_at(const LimitParams& p, double t);

// Throws std::invalid_argument for a non-uniform grid under paper_euler.
std::vector<double> limit_intensity(const LimitParams& p, std::span<const double> grid,
                                    LambdaScheme scheme);

std::vector<double> q1_curve(const LimitParams& p, std::span<const double> grid,
                             std::span<const double> lambda_bar, LambdaScheme scheme);

LimitCurves limit_curves(const LimitParams& p, std::span<const double> grid, LambdaScheme scheme);

// Monte Carlo ensemble of the limiting one-dimensional state process.
struct LimitEnsemble {
  std::vector<double> running_min;  // per path, over the grid
  std::vector<double> terminal;     // per path
  std::vector<double> mean;         // per grid point
  Matrix paths;                     // n_paths x grid, only when requested
};

struct LimitSimOptions {
  bool keep_paths = false;
  unsigned workers = 0;
};

// Euler paths of dX = (a (Q_1 - X) + c y lambda_bar) dt + sigma dW on the curve grid.
// The jump drift over a step is taken as Q_1(t_{k+1}) - Q_1(t_k), i.e. the
// integral of c y lambda_bar under the curve's own quadrature, so sigma = 0
// reproduces Q_1 exactly.
LimitEnsemble simulate_limit_state(const LimitParams& p, const LimitCurves& curves,
                                   std::size_t n_paths, std::uint64_t seed,
                                   const LimitSimOptions& options = {});

// E[X_t | factor path] = Q_1(t) + factor_loading * (Y_t - Y_0).
std::vector<double> conditional_limit_mean(const LimitParams& p, const LimitCurves& curves,
                                           std::span<const double> factor_path);

}  // namespace hawkesnet
