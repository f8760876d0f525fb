#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "hawkesnet/hawkes.hpp"

using namespace hawkesnet;

namespace {

struct MeanSe {
  double mean;
  double se;
};

MeanSe mean_se(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / (n - 1) / n)};
}

HawkesSpec two_node() {
  HawkesSpec s;
  s.mu = {0.8, 0.4};
  s.alpha = Matrix(2, 2);
  s.alpha(0, 0) = 0.6;
  s.alpha(0, 1) = 0.3;
  s.alpha(1, 0) = 0.5;
  s.alpha(1, 1) = 0.2;
  s.beta = {1.5, 1.0};
  return s;
}

}  // namespace

TEST(Branching, SingleNode) {
  const auto b = branching_matrix(HawkesSpec::uniform(1, 1.0, 2.0, 4.0));
  EXPECT_DOUBLE_EQ(b(0, 0), 0.5);
}

TEST(Branching, ZeroExcitation) {
  const auto b = branching_matrix(HawkesSpec::uniform(3, 1.0, 0.0, 2.0));
  for (double v : b.data()) EXPECT_EQ(v, 0.0);
}

TEST(Branching, UnitRatio) {
  const auto b = branching_matrix(HawkesSpec::uniform(2, 1.0, 1.2, 1.2));
  for (double v : b.data()) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Branching, RowsUseTargetDecay) {
  const auto s = two_node();
  const auto b = branching_matrix(s);
  EXPECT_DOUBLE_EQ(b(0, 1), 0.3 / 1.5);
  EXPECT_DOUBLE_EQ(b(1, 0), 0.5 / 1.0);
}

TEST(SpectralRadius, Examples) {
  Matrix id(2, 2);
  id(0, 0) = id(1, 1) = 1.0;
  EXPECT_NEAR(spectral_radius(id), 1.0, 1e-9);
  EXPECT_NEAR(spectral_radius(Matrix(2, 2)), 0.0, 1e-12);
  EXPECT_NEAR(spectral_radius(Matrix(2, 2, 0.5)), 1.0, 1e-9);
}

TEST(SpectralRadius, PermutationMatrixConverges) {
  Matrix p(2, 2);
  p(0, 1) = p(1, 0) = 1.0;
  EXPECT_NEAR(spectral_radius(p), 1.0, 1e-9);
}

TEST(SpectralRadius, MatchesTwoByTwoEigenvalue) {
  const auto b = branching_matrix(two_node());
  const double tr = b(0, 0) + b(1, 1), det = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0);
  const double oracle = 0.5 * (tr + std::sqrt(tr * tr - 4 * det));
  EXPECT_NEAR(spectral_radius(b), oracle, 1e-8);
}

TEST(SpectralRadius, RejectsNegativeOrNonSquare) {
  Matrix m(2, 2);
  m(0, 1) = -1.0;
  EXPECT_THROW(spectral_radius(m), std::invalid_argument);
  EXPECT_THROW(spectral_radius(Matrix(2, 3)), std::invalid_argument);
}

TEST(HawkesSpec, ValidationErrors) {
  auto s = two_node();
  s.mu[0] = -1.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = two_node();
  s.beta[1] = 0.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = two_node();
  s.alpha(1, 1) = -0.1;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = two_node();
  s.beta.push_back(1.0);
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(Simulate, RejectsNonPositiveHorizon) {
  const auto s = two_node();
  EXPECT_THROW(simulate_hawkes(s, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(simulate_hawkes(s, -1.0, 1), std::invalid_argument);
}

TEST(Simulate, FlagsSupercritical) {
  EXPECT_TRUE(simulate_hawkes(HawkesSpec::uniform(2, 0.1, 1.0, 1.0), 1.0, 3).supercritical);
  EXPECT_FALSE(simulate_hawkes(two_node(), 1.0, 3).supercritical);
}

TEST(Simulate, EventsOrderedInsideHorizon) {
  const auto log = simulate_hawkes(two_node(), 50.0, 11);
  ASSERT_GT(log.events.size(), 10u);
  for (std::size_t k = 0; k < log.events.size(); ++k) {
    EXPECT_GT(log.events[k].time, 0.0);
    EXPECT_LE(log.events[k].time, 50.0);
    EXPECT_LT(log.events[k].node, 2u);
    if (k > 0) EXPECT_LT(log.events[k - 1].time, log.events[k].time);
  }
}

TEST(Simulate, Deterministic) {
  const auto a = simulate_hawkes(two_node(), 20.0, 99);
  const auto b = simulate_hawkes(two_node(), 20.0, 99);
  ASSERT_EQ(a.events.size(), b.events.size());
  for (std::size_t k = 0; k < a.events.size(); ++k) {
    EXPECT_EQ(a.events[k].time, b.events[k].time);
    EXPECT_EQ(a.events[k].node, b.events[k].node);
    EXPECT_EQ(a.events[k].intensity, b.events[k].intensity);
  }
  const auto c = simulate_hawkes(two_node(), 20.0, 100);
  EXPECT_NE(a.events.front().time, c.events.front().time);
}

TEST(Simulate, PoissonMeanCount) {
  const HawkesSimulator sim(HawkesSpec::uniform(1, 2.0, 0.0, 1.0));
  std::vector<double> counts;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    counts.push_back(static_cast<double>(sim.simulate(10.0, seed).events.size()));
  }
  const auto [m, se] = mean_se(counts);
  EXPECT_NEAR(m, 20.0, 3 * se);
}

TEST(Simulate, PoissonInterarrivalsPassKolmogorovSmirnov) {
  HawkesSpec s = HawkesSpec::uniform(3, 0.0, 0.0, 1.0);
  s.mu = {0.5, 1.0, 1.5};
  const double rate = 3.0;
  std::vector<double> gaps;
  std::uint64_t seed = 1;
  while (gaps.size() < 10000) {
    const auto log = simulate_hawkes(s, 100.0, seed++);
    double prev = 0.0;
    for (const auto& e : log.events) {
      gaps.push_back(e.time - prev);
      prev = e.time;
    }
  }
  gaps.resize(10000);
  std::sort(gaps.begin(), gaps.end());
  const double n = static_cast<double>(gaps.size());
  double d = 0.0;
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    const double f = 1.0 - std::exp(-rate * gaps[k]);
    d = std::max({d, (k + 1) / n - f, f - k / n});
  }
  // Asymptotic critical value of the one-sample statistic at significance 0.01.
  EXPECT_LT(d, 1.6276 / std::sqrt(n));
}

TEST(Simulate, PoissonNodeShares) {
  HawkesSpec s = HawkesSpec::uniform(2, 0.0, 0.0, 1.0);
  s.mu = {1.0, 3.0};
  const auto counts = simulate_hawkes(s, 5000.0, 5).counts(2);
  const double total = static_cast<double>(counts[0] + counts[1]);
  const double share = counts[0] / total;
  EXPECT_NEAR(share, 0.25, 3 * std::sqrt(0.25 * 0.75 / total));
}

TEST(Simulate, CompensatorMatchesCounts) {
  const auto spec = two_node();
  const HawkesSimulator sim(spec);
  std::vector<double> diff0, diff1;
  for (std::uint64_t seed = 0; seed < 3000; ++seed) {
    const auto log = sim.simulate(5.0, seed);
    const auto n = log.counts(2);
    const auto comp = compensator(spec, log, 5.0);
    diff0.push_back(n[0] - comp[0]);
    diff1.push_back(n[1] - comp[1]);
  }
  const auto d0 = mean_se(diff0), d1 = mean_se(diff1);
  EXPECT_LE(std::abs(d0.mean), 3 * d0.se);
  EXPECT_LE(std::abs(d1.mean), 3 * d1.se);
}

TEST(Simulate, MoreExcitationMeansMoreEvents) {
  auto low = two_node();
  auto high = low;
  high.alpha(0, 1) = 0.6;
  const HawkesSimulator a(low), b(high);
  double total_low = 0.0, total_high = 0.0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    total_low += static_cast<double>(a.simulate(5.0, seed).counts(2)[0]);
    total_high += static_cast<double>(b.simulate(5.0, seed).counts(2)[0]);
  }
  EXPECT_GT(total_high, total_low);
}

TEST(Compensator, PoissonIsLinear) {
  const auto spec = HawkesSpec::uniform(2, 1.5, 0.0, 1.0);
  EventLog empty;
  empty.horizon = 4.0;
  const auto c = compensator(spec, empty, 4.0);
  EXPECT_DOUBLE_EQ(c[0], 6.0);
  EXPECT_DOUBLE_EQ(c[1], 6.0);
}

TEST(Compensator, SingleEventClosedForm) {
  const auto spec = HawkesSpec::uniform(1, 0.5, 2.0, 3.0);
  EventLog log;
  log.horizon = 2.0;
  log.events.push_back({0.5, 0, 0.5});
  const double expected = 0.5 * 2.0 + 2.0 / 3.0 * (1.0 - std::exp(-3.0 * 1.5));
  EXPECT_NEAR(compensator(spec, log, 2.0)[0], expected, 1e-14);
  // Events after t do not contribute.
  EXPECT_NEAR(compensator(spec, log, 0.4)[0], 0.2, 1e-15);
}

TEST(IntensityPath, EmptyLogIsBaseline) {
  auto spec = two_node();
  EventLog log;
  log.horizon = 1.0;
  const std::vector<double> grid = {0.0, 0.25, 0.5, 1.0};
  const auto path = intensity_path(spec, log, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_EQ(path(0, k), 0.8);
    EXPECT_EQ(path(1, k), 0.4);
  }
}

TEST(IntensityPath, SingleEventKernel) {
  const auto spec = HawkesSpec::uniform(1, 0.7, 1.3, 2.1);
  EventLog log;
  log.horizon = 3.0;
  log.events.push_back({1.0, 0, 0.7});
  const std::vector<double> grid = {0.5, 1.0, 1.5, 3.0};
  const auto path = intensity_path(spec, log, grid);
  EXPECT_DOUBLE_EQ(path(0, 0), 0.7);
  EXPECT_DOUBLE_EQ(path(0, 1), 0.7);  // left limit at the event time
  EXPECT_NEAR(path(0, 2), 0.7 + 1.3 * std::exp(-2.1 * 0.5), 1e-15);
  EXPECT_NEAR(path(0, 3), 0.7 + 1.3 * std::exp(-2.1 * 2.0), 1e-15);
}

TEST(IntensityPath, RejectsUnsortedGrid) {
  EventLog log;
  log.horizon = 1.0;
  const std::vector<double> grid = {0.0, 0.5, 0.3};
  EXPECT_THROW(intensity_path(two_node(), log, grid), std::invalid_argument);
}

TEST(IntensityPath, ReproducesThinningIntensities) {
  const auto spec = two_node();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto log = simulate_hawkes(spec, 30.0, seed);
    std::vector<double> times;
    for (const auto& e : log.events) times.push_back(e.time);
    const auto path = intensity_path(spec, log, times);
    for (std::size_t k = 0; k < log.events.size(); ++k) {
      const auto& e = log.events[k];
      EXPECT_NEAR(path(e.node, k), e.intensity, 1e-12 * std::max(1.0, e.intensity));
    }
  }
}

TEST(IntensityPath, NeverBelowBaseline) {
  const auto spec = two_node();
  std::vector<double> grid;
  for (int k = 0; k <= 400; ++k) grid.push_back(0.05 * k);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto log = simulate_hawkes(spec, 20.0, seed);
    const auto path = intensity_path(spec, log, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      EXPECT_GE(path(0, k), spec.mu[0]);
      EXPECT_GE(path(1, k), spec.mu[1]);
    }
  }
}

TEST(IntensityState, DecayNeverIncreasesExcess) {
  const auto spec = two_node();
  IntensityState state(2);
  state.excite(spec.alpha, 0);
  state.excite(spec.alpha, 1);
  double t = 0.0;
  std::vector<double> prev(state.excess().begin(), state.excess().end());
  for (int k = 0; k < 50; ++k) {
    t += 0.1 * (k % 3);
    state.decay_to(t, spec.beta);
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_LE(state.excess()[i], prev[i]);
      EXPECT_GE(state.excess()[i], 0.0);
      prev[i] = state.excess()[i];
    }
  }
}

TEST(Simulate, StationaryMeanIntensity) {
  // mu / (1 - alpha / beta) = 2 for a single node with mu = 1, alpha = 1, beta = 2.
  const auto spec = HawkesSpec::uniform(1, 1.0, 1.0, 2.0);
  std::vector<double> averages;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto log = simulate_hawkes(spec, 500.0, seed);
    averages.push_back(compensator(spec, log, 500.0)[0] / 500.0);
  }
  const auto [m, se] = mean_se(averages);
  // Starting empty biases the average down by about 1 / horizon.
  EXPECT_NEAR(m, 2.0, 3 * se + 0.004);
}
