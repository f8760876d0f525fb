#include "hawkesnet/risk.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hawkesnet {

namespace {

Estimate mean_and_se(std::span<const double> values) {
  const auto n = static_cast<double>(values.size());
  Estimate e;
  if (values.empty()) return e;
  e.value = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.value) * (v - e.value);
    e.se = std::sqrt(ss / (n - 1.0) / n);
  }
  return e;
}

std::size_t grid_index(std::span<const double> grid, double t) {
  const double tol = 1e-9 * std::max(1.0, std::abs(t));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (std::abs(grid[k] - t) <= tol) return k;
  }
  throw std::invalid_argument("time " + std::to_string(t) + " is not on the simulation grid");
}

void check_runs(std::span<const RunSummary> runs) {
  if (runs.empty()) throw std::invalid_argument("risk: empty run list");
  const std::size_t m = runs.front().running_min.size();
  for (const auto& r : runs) {
    if (r.running_min.size() != m) throw std::invalid_argument("risk: runs have different bank counts");
  }
}

std::vector<RunSummary> summarize_all(std::span<const SimOutput> runs) {
  std::vector<RunSummary> out;
  out.reserve(runs.size());
  for (const auto& r : runs) out.push_back(summarize(r));
  return out;
}

}  // namespace

Estimate sr_mc(std::span<const RunSummary> runs, double D) {
  check_runs(runs);
  std::vector<double> fraction(runs.size());
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& mins = runs[r].running_min;
    const auto hits = std::count_if(mins.begin(), mins.end(), [D](double v) { return v <= D; });
    fraction[r] = static_cast<double>(hits) / static_cast<double>(mins.size());
  }
  return mean_and_se(fraction);
}

Estimate sr_mc(std::span<const SimOutput> runs, double D) {
  if (runs.empty()) throw std::invalid_argument("risk: empty run list");
  const auto s = summarize_all(runs);
  return sr_mc(std::span<const RunSummary>(s), D);
}

Estimate add_mc(std::span<const RunSummary> runs, std::span<const double> grid, double t) {
  check_runs(runs);
  const std::size_t k = grid_index(grid, t);
  std::vector<double> means(runs.size());
  for (std::size_t r = 0; r < runs.size(); ++r) means[r] = runs[r].mean_path.at(k);
  return mean_and_se(means);
}

Estimate add_mc(std::span<const SimOutput> runs, double t) {
  if (runs.empty()) throw std::invalid_argument("risk: empty run list");
  const auto s = summarize_all(runs);
  return add_mc(std::span<const RunSummary>(s), runs.front().grid, t);
}

RiskReport risk_report(std::span<const RunSummary> runs, std::span<const double> grid, double D) {
  check_runs(runs);
  RiskReport rep;
  rep.n_runs = runs.size();
  rep.sr = sr_mc(runs, D);
  rep.add.assign(grid.size(), 0.0);
  for (const auto& r : runs) {
    for (std::size_t k = 0; k < grid.size(); ++k) rep.add[k] += r.mean_path.at(k);
  }
  for (auto& v : rep.add) v /= static_cast<double>(runs.size());
  rep.add_terminal = add_mc(runs, grid, grid.back());
  return rep;
}

Estimate sr_lln(const LimitEnsemble& ensemble, double D) {
  const auto& mins = ensemble.running_min;
  if (mins.empty()) return {};
  const auto hits = std::count_if(mins.begin(), mins.end(), [D](double v) { return v <= D; });
  const double n = static_cast<double>(mins.size());
  const double p = static_cast<double>(hits) / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

double add_lln(const LimitCurves& curves, double t) { return curves.q1.at(grid_index(curves.grid, t)); }

std::vector<std::size_t> default_counts(std::span<const RunSummary> runs, double D) {
  check_runs(runs);
  std::vector<std::size_t> counts(runs.front().running_min.size() + 1, 0);
  for (const auto& r : runs) {
    const auto n = std::count_if(r.running_min.begin(), r.running_min.end(),
                                 [D](double v) { return v <= D; });
    ++counts[static_cast<std::size_t>(n)];
  }
  return counts;
}

std::vector<double> default_count_distribution(std::span<const RunSummary> runs, double D) {
  const auto counts = default_counts(runs, D);
  std::vector<double> pmf(counts.size());
  for (std::size_t n = 0; n < counts.size(); ++n) {
    pmf[n] = static_cast<double>(counts[n]) / static_cast<double>(runs.size());
  }
  return pmf;
}

std::vector<double> default_count_distribution(std::span<const SimOutput> runs, double D) {
  if (runs.empty()) throw std::invalid_argument("risk: empty run list");
  const auto s = summarize_all(runs);
  return default_count_distribution(std::span<const RunSummary>(s), D);
}

ChiSquareResult chi_square_homogeneity(std::span<const std::size_t> first,
                                       std::span<const std::size_t> second) {
  if (first.size() != second.size()) throw std::invalid_argument("chi-square: bin count mismatch");
  const double n1 = std::accumulate(first.begin(), first.end(), 0.0);
  const double n2 = std::accumulate(second.begin(), second.end(), 0.0);
  if (n1 <= 0.0 || n2 <= 0.0) throw std::invalid_argument("chi-square: empty sample");
  const double total = n1 + n2;

  std::vector<std::pair<double, double>> pooled;
  double a = 0.0, b = 0.0;
  for (std::size_t k = 0; k < first.size(); ++k) {
    a += static_cast<double>(first[k]);
    b += static_cast<double>(second[k]);
    const double column = a + b;
    if (column * n1 / total >= 5.0 && column * n2 / total >= 5.0) {
      pooled.emplace_back(a, b);
      a = b = 0.0;
    }
  }
  if (a + b > 0.0) {
    if (pooled.empty()) {
      pooled.emplace_back(a, b);
    } else {
      pooled.back().first += a;
      pooled.back().second += b;
    }
  }

  ChiSquareResult res;
  if (pooled.size() < 2) return res;
  for (const auto& [o1, o2] : pooled) {
    const double column = o1 + o2;
    const double e1 = column * n1 / total;
    const double e2 = column * n2 / total;
    res.statistic += (o1 - e1) * (o1 - e1) / e1 + (o2 - e2) * (o2 - e2) / e2;
  }
  res.dof = pooled.size() - 1;
  const boost::math::chi_squared dist(static_cast<double>(res.dof));
  res.p_value = boost::math::cdf(boost::math::complement(dist, res.statistic));
  return res;
}

DependenceCurve tail_dependence(std::span<const double> samples_i, std::span<const double> samples_j,
                                std::span<const double> q_grid, Tail tail) {
  if (samples_i.size() != samples_j.size()) throw std::invalid_argument("tail_dependence: unequal lengths");
  const std::size_t n = samples_i.size();
  if (n < 100) throw std::invalid_argument("tail_dependence: need at least 100 samples");
  for (double q : q_grid) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("tail_dependence: q must lie in (0, 1)");
  }

  const double sign = tail == Tail::lower ? -1.0 : 1.0;
  auto frechet = [&](std::span<const double> xs) {
    std::vector<double> sorted(n);
    for (std::size_t k = 0; k < n; ++k) sorted[k] = sign * xs[k];
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> z(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double v = sign * xs[k];
      const auto rank = static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
      z[k] = -1.0 / std::log(rank / static_cast<double>(n + 1));
    }
    return z;
  };
  const auto zi = frechet(samples_i);
  const auto zj = frechet(samples_j);

  DependenceCurve curve;
  curve.tail = tail;
  curve.q_grid.assign(q_grid.begin(), q_grid.end());
  curve.p_of_q.reserve(q_grid.size());
  for (double q : q_grid) {
    const double threshold = -1.0 / std::log(q);
    std::size_t conditioning = 0, joint = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (zj[k] > threshold) {
        ++conditioning;
        if (zi[k] > threshold) ++joint;
      }
    }
    curve.p_of_q.push_back(conditioning == 0 ? 0.0
                                             : static_cast<double>(joint) / static_cast<double>(conditioning));
  }
  return curve;
}

LimitParams limit_params(const HomogeneousNetwork& net) {
  LimitParams p;
  p.a = net.bank.a;
  p.sigma = net.bank.sigma;
  p.c = net.bank.c_hat;
  p.x = net.x0;
  p.factor_loading = net.bank.factor_loading;
  p.beta = net.beta;
  switch (net.jump) {
    case JumpKind::none:
      p.mu = 0.0;
      p.alpha = 0.0;
      break;
    case JumpKind::poisson:
      p.mu = net.mu;
      p.alpha = 0.0;
      break;
    case JumpKind::compound_hawkes:
      p.mean_jump_size = net.sizes.mean();
      [[fallthrough]];
    case JumpKind::hawkes:
      p.mu = net.mu;
      // A raw pair excitation alpha feeds M nodes: mean-field total M * alpha.
      p.alpha = net.scaling == HomogeneousNetwork::KernelScaling::raw
                    ? net.alpha * static_cast<double>(net.M)
                    : net.alpha;
      break;
  }
  return p;
}

std::vector<FluctuationRow> fluctuation_scaling(const HomogeneousNetwork& net,
                                                std::span<const std::size_t> M_list,
                                                std::size_t n_runs, std::uint64_t seed,
                                                unsigned workers) {
  for (std::size_t k = 1; k < M_list.size(); ++k) {
    if (M_list[k] <= M_list[k - 1]) throw std::invalid_argument("fluctuation_scaling: M_list must increase");
  }
  if (n_runs < 2) throw std::invalid_argument("fluctuation_scaling: need at least 2 runs");
  std::vector<FluctuationRow> rows;
  for (std::size_t idx = 0; idx < M_list.size(); ++idx) {
    HomogeneousNetwork sized = net;
    sized.M = M_list[idx];
    const double q1_T = q1_at(limit_params(sized), sized.T);
    const auto runs = simulate_batch(sized.build(), n_runs, splitmix64(seed + idx), workers);
    const double scale = std::sqrt(static_cast<double>(sized.M));
    std::vector<double> xi(n_runs);
    for (std::size_t r = 0; r < n_runs; ++r) xi[r] = scale * (runs[r].mean_path.back() - q1_T);
    const double mean = std::accumulate(xi.begin(), xi.end(), 0.0) / static_cast<double>(n_runs);
    double ss = 0.0;
    for (double v : xi) ss += (v - mean) * (v - mean);
    rows.push_back({sized.M, ss / static_cast<double>(n_runs - 1), mean});
  }
  return rows;
}

}  // namespace hawkesnet
