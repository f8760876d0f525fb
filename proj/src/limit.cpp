#include "hawkesnet/limit.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "hawkesnet/parallel.hpp"
#include "hawkesnet/rng.hpp"

namespace hawkesnet {

namespace {

// expm1(u) / u, continuous at 0.
double expm1_ratio(double u) {
  if (std::abs(u) < 1e-5) return 1.0 + u / 2.0 + u * u / 6.0;
  return std::expm1(u) / u;
}

// (expm1(u) - u) / u^2, continuous at 0.
double expm1_second(double u) {
  if (std::abs(u) < 1e-3) return 0.5 + u / 6.0 + u * u / 24.0 + u * u * u / 120.0;
  return (std::expm1(u) - u) / (u * u);
}

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("limit: empty grid");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw std::invalid_argument("limit: grid must be increasing");
  }
}

double uniform_step(std::span<const double> grid) {
  if (grid.size() < 2) return 0.0;
  const double dt = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (std::abs((grid[k] - grid[k - 1]) - dt) > 1e-9 * dt) {
      throw std::invalid_argument("limit: paper_euler scheme needs a uniform grid");
    }
  }
  return dt;
}

}  // namespace

void LimitParams::validate() const {
  auto require = [](bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
  };
  require(mu >= 0.0 && std::isfinite(mu), "limit: mu must be >= 0");
  require(alpha >= 0.0 && std::isfinite(alpha), "limit: alpha must be >= 0");
  require(beta > 0.0 && std::isfinite(beta), "limit: beta must be > 0");
  require(a >= 0.0 && std::isfinite(a), "limit: a must be >= 0");
  require(sigma >= 0.0 && std::isfinite(sigma), "limit: sigma must be >= 0");
  require(c <= 0.0 && std::isfinite(c), "limit: c must be <= 0");
  require(std::isfinite(x), "limit: x must be finite");
  require(std::isfinite(mean_jump_size) && std::isfinite(factor_loading),
          "limit: mean_jump_size and factor_loading must be finite");
}

std::vector<double> uniform_grid(double T, std::size_t steps) {
  if (!(T > 0.0) || steps == 0) throw std::invalid_argument("uniform_grid: need T > 0 and steps >= 1");
  std::vector<double> g(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) g[k] = T * static_cast<double>(k) / static_cast<double>(steps);
  return g;
}

double limit_intensity_at(const LimitParams& p, double t) {
  return p.mu * (1.0 + p.alpha * t * expm1_ratio((p.alpha - p.beta) * t));
}

double q1_at(const LimitParams& p, double t) {
  const double integral = t + p.alpha * t * t * expm1_second((p.alpha - p.beta) * t);
  return p.x + (p.c * p.mean_jump_size * p.mu) * integral;
}

std::vector<double> limit_intensity(const LimitParams& p, std::span<const double> grid,
                                    LambdaScheme scheme) {
  p.validate();
  check_grid(grid);
  std::vector<double> lambda(grid.size());
  if (scheme == LambdaScheme::exact) {
    for (std::size_t k = 0; k < grid.size(); ++k) lambda[k] = limit_intensity_at(p, grid[k] - grid[0]);
    return lambda;
  }
  const double dt = uniform_step(grid);
  const double growth = dt * p.alpha * std::exp(-p.beta * dt);
  lambda[0] = p.mu;
  for (std::size_t k = 1; k < grid.size(); ++k) lambda[k] = lambda[k - 1] + growth * lambda[k - 1];
  return lambda;
}

std::vector<double> q1_curve(const LimitParams& p, std::span<const double> grid,
                             std::span<const double> lambda_bar, LambdaScheme scheme) {
  p.validate();
  if (lambda_bar.size() != grid.size()) throw std::invalid_argument("q1_curve: size mismatch");
  const double cy = p.c * p.mean_jump_size;
  std::vector<double> q(grid.size());
  q[0] = p.x;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double dt = grid[k] - grid[k - 1];
    const double area = scheme == LambdaScheme::paper_euler
                            ? dt * lambda_bar[k - 1]
                            : 0.5 * dt * (lambda_bar[k - 1] + lambda_bar[k]);
    q[k] = q[k - 1] + cy * area;
  }
  return q;
}

LimitCurves limit_curves(const LimitParams& p, std::span<const double> grid, LambdaScheme scheme) {
  LimitCurves curves;
  curves.grid.assign(grid.begin(), grid.end());
  curves.lambda_bar = limit_intensity(p, grid, scheme);
  curves.q1 = q1_curve(p, grid, curves.lambda_bar, scheme);
  return curves;
}

LimitEnsemble simulate_limit_state(const LimitParams& p, const LimitCurves& curves,
                                   std::size_t n_paths, std::uint64_t seed,
                                   const LimitSimOptions& options) {
  p.validate();
  const std::size_t n_points = curves.grid.size();
  if (n_points == 0 || curves.q1.size() != n_points) {
    throw std::invalid_argument("simulate_limit_state: curves do not cover the grid");
  }

  LimitEnsemble ens;
  ens.running_min.resize(n_paths);
  ens.terminal.resize(n_paths);
  if (options.keep_paths) ens.paths = Matrix(n_paths, n_points);

  // Per-path sums for the ensemble mean, reduced in index order afterwards.
  Matrix sums;
  constexpr std::size_t kBlock = 1024;
  const std::size_t n_blocks = (n_paths + kBlock - 1) / kBlock;
  sums = Matrix(n_blocks, n_points);

  parallel_for(n_blocks, options.workers, [&](std::size_t b) {
    auto block_sum = sums.row(b);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t end = std::min(n_paths, (b + 1) * kBlock);
    for (std::size_t j = b * kBlock; j < end; ++j) {
      Engine engine = make_engine(path_seed(seed, j), Stream::limit);
      double x = p.x;
      double lo = x;
      block_sum[0] += x;
      if (options.keep_paths) ens.paths(j, 0) = x;
      for (std::size_t k = 1; k < n_points; ++k) {
        const double dt = curves.grid[k] - curves.grid[k - 1];
        const double noise = p.sigma == 0.0 ? 0.0 : p.sigma * std::sqrt(dt) * normal(engine);
        x += p.a * (curves.q1[k - 1] - x) * dt + (curves.q1[k] - curves.q1[k - 1]) + noise;
        lo = std::min(lo, x);
        block_sum[k] += x;
        if (options.keep_paths) ens.paths(j, k) = x;
      }
      ens.running_min[j] = lo;
      ens.terminal[j] = x;
    }
  });

  ens.mean.assign(n_points, 0.0);
  if (n_paths > 0) {
    for (std::size_t b = 0; b < n_blocks; ++b) {
      for (std::size_t k = 0; k < n_points; ++k) ens.mean[k] += sums(b, k);
    }
    for (auto& v : ens.mean) v /= static_cast<double>(n_paths);
  }
  return ens;
}

std::vector<double> conditional_limit_mean(const LimitParams& p, const LimitCurves& curves,
                                           std::span<const double> factor_path) {
  if (factor_path.size() != curves.q1.size()) {
    throw std::invalid_argument("conditional_limit_mean: factor path must share the curve grid");
  }
  std::vector<double> out(curves.q1.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = curves.q1[k] + p.factor_loading * (factor_path[k] - factor_path[0]);
  }
  return out;
}

}  // namespace hawkesnet
