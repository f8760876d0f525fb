#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hawkesnet/network.hpp"
#include "hawkesnet/risk.hpp"

using namespace hawkesnet;

namespace {

NetworkSpec quiet(std::size_t M) {
  HomogeneousNetwork n;
  n.M = M;
  n.jump = JumpKind::none;
  n.x0 = 0.3;
  n.steps = 50;
  return n.build();
}

HomogeneousNetwork table1_net(double x0) {
  HomogeneousNetwork n;
  n.M = 300;
  n.bank = {0.5, 0.5, -0.2, 0.0};
  n.mu = 0.01;
  n.alpha = 1.0;
  n.beta = 1.2;
  n.x0 = x0;
  return n;
}

}  // namespace

TEST(Network, FrozenWithoutDriversIsConstant) {
  const auto out = simulate_network(quiet(4), 1);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t k = 0; k < out.grid.size(); ++k) EXPECT_EQ(out.paths(i, k), 0.3);
    EXPECT_EQ(out.running_min[i], 0.3);
  }
  EXPECT_TRUE(out.jump_log.events.empty());
}

TEST(Network, LendingConservesMeanAndContracts) {
  auto spec = quiet(5);
  for (auto& b : spec.banks) b.a = 2.0;
  spec.x0 = {-1.0, 0.0, 0.5, 2.0, 3.5};
  const double mean0 = 1.0;
  const auto out = simulate_network(spec, 3);
  const auto mean = empirical_mean_path(out);
  for (double v : mean) EXPECT_NEAR(v, mean0, 1e-12);
  for (std::size_t i = 0; i < 5; ++i) {
    double prev = std::abs(out.paths(i, 0) - mean0);
    for (std::size_t k = 1; k < out.grid.size(); ++k) {
      const double gap = std::abs(out.paths(i, k) - mean0);
      EXPECT_LE(gap, prev + 1e-15);
      prev = gap;
    }
  }
}

TEST(Network, OutputInvariants) {
  const auto spec = table1_net(0.2).build();
  const auto out = simulate_network(spec, 8);
  ASSERT_EQ(out.paths.rows(), 300u);
  ASSERT_EQ(out.paths.cols(), 101u);
  for (std::size_t i = 0; i < 300; ++i) {
    EXPECT_EQ(out.paths(i, 0), 0.2);
    const auto row = out.paths.row(i);
    EXPECT_EQ(out.running_min[i], *std::min_element(row.begin(), row.end()));
  }
  EXPECT_EQ(out.grid.front(), 0.0);
  EXPECT_EQ(out.grid.back(), 1.0);
}

TEST(Network, SingleBankMeanIsPath) {
  HomogeneousNetwork n;
  n.M = 1;
  n.bank = {0.0, 1.0, 0.0, 0.0};
  n.jump = JumpKind::none;
  const auto out = simulate_network(n.build(), 4);
  const auto mean = empirical_mean_path(out);
  for (std::size_t k = 0; k < mean.size(); ++k) EXPECT_EQ(mean[k], out.paths(0, k));
}

TEST(Network, JumpsLowerReservesBySize) {
  // Pure jumps: every reserve equals x0 + c_hat * (own jump count).
  HomogeneousNetwork n;
  n.M = 3;
  n.bank = {0.0, 0.0, -0.25, 0.0};
  n.jump = JumpKind::hawkes;
  n.mu = 1.0;
  n.alpha = 0.5;
  n.beta = 2.0;
  n.scaling = HomogeneousNetwork::KernelScaling::raw;
  n.x0 = 1.0;
  n.T = 5.0;
  const auto out = simulate_network(n.build(), 21);
  const auto counts = out.jump_log.counts(3);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(out.paths(i, n.steps), 1.0 - 0.25 * static_cast<double>(counts[i]), 1e-12);
  }
}

TEST(Network, JumpAppliedAtEndOfContainingStep) {
  HomogeneousNetwork n;
  n.M = 1;
  n.bank = {0.0, 0.0, -1.0, 0.0};
  n.jump = JumpKind::poisson;
  n.mu = 3.0;
  n.steps = 10;
  const auto out = simulate_network(n.build(), 5);
  ASSERT_FALSE(out.jump_log.events.empty());
  for (std::size_t k = 0; k <= n.steps; ++k) {
    const double t = out.grid[k];
    double expected = 0.0;
    for (const auto& e : out.jump_log.events) {
      if (std::floor(e.time / 0.1) < static_cast<double>(k)) expected -= 1.0;
    }
    EXPECT_NEAR(out.paths(0, k), expected, 1e-12) << "t=" << t;
  }
}

TEST(Network, CompoundSizesScaleJumps) {
  HomogeneousNetwork n;
  n.M = 2;
  n.bank = {0.0, 0.0, -1.0, 0.0};
  n.jump = JumpKind::compound_hawkes;
  n.mu = 2.0;
  n.alpha = 0.0;
  n.sizes = {SizeDistribution::Kind::uniform, 0.5, 1.5, false};
  n.scaling = HomogeneousNetwork::KernelScaling::raw;
  n.T = 20.0;
  n.steps = 200;
  const auto out = simulate_network(n.build(), 2);
  const auto counts = out.jump_log.counts(2);
  for (std::size_t i = 0; i < 2; ++i) {
    const double drop = -out.paths(i, n.steps);
    EXPECT_GE(drop, 0.5 * counts[i] - 1e-12);
    EXPECT_LE(drop, 1.5 * counts[i] + 1e-12);
  }
}

TEST(Network, FactorShiftsAllBanks) {
  HomogeneousNetwork n;
  n.M = 3;
  n.bank = {0.0, 0.0, 0.0, 2.0};
  n.jump = JumpKind::none;
  FactorSpec f;
  f.vol_param = 0.3;
  f.y0 = 1.0;
  n.factor = f;
  const auto out = simulate_network(n.build(), 6);
  ASSERT_EQ(out.factor_path.size(), n.steps + 1);
  EXPECT_EQ(out.factor_path[0], 1.0);
  for (std::size_t k = 0; k <= n.steps; ++k) {
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(out.paths(i, k), 2.0 * (out.factor_path[k] - 1.0), 1e-12);
    }
  }
}

TEST(Network, NonFiniteReserveRaisesWithStep) {
  HomogeneousNetwork n;
  n.M = 2;
  n.bank = {0.0, 0.0, 0.0, 1000.0};
  n.jump = JumpKind::none;
  FactorSpec f;
  f.drift = FactorSpec::Drift::constant;
  f.drift_p1 = 1e308;
  n.factor = f;
  auto spec = n.build();
  try {
    simulate_network(spec, 1);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_GE(e.step(), 1u);
  }
}

TEST(Network, ValidationErrors) {
  auto spec = quiet(2);
  spec.rho = 1.5;
  EXPECT_THROW(NetworkSimulator{spec}, std::invalid_argument);
  spec = quiet(2);
  spec.banks[1].c_hat = 0.1;
  EXPECT_THROW(NetworkSimulator{spec}, std::invalid_argument);
  spec = quiet(2);
  spec.banks[0].a = 2e6;
  EXPECT_THROW(NetworkSimulator{spec}, std::invalid_argument);
  spec = quiet(2);
  spec.steps = 0;
  EXPECT_THROW(NetworkSimulator{spec}, std::invalid_argument);
  spec = quiet(2);
  spec.x0.pop_back();
  EXPECT_THROW(NetworkSimulator{spec}, std::invalid_argument);
}

TEST(Network, BatchIndependentOfWorkers) {
  const auto spec = table1_net(0.1).build();
  const auto a = simulate_batch(spec, 40, 77, 1);
  const auto b = simulate_batch(spec, 40, 77, 7);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    EXPECT_EQ(a[j].running_min, b[j].running_min);
    EXPECT_EQ(a[j].mean_path, b[j].mean_path);
    EXPECT_EQ(a[j].jump_count, b[j].jump_count);
  }
  // Path j does not depend on the batch size.
  const auto c = simulate_batch(spec, 10, 77, 3);
  for (std::size_t j = 0; j < c.size(); ++j) EXPECT_EQ(c[j].terminal, a[j].terminal);
}

TEST(Network, MeanIsMartingaleWithoutJumps) {
  HomogeneousNetwork n;
  n.M = 10;
  n.bank = {3.0, 1.0, 0.0, 0.0};
  n.rho = 0.2;
  n.jump = JumpKind::none;
  n.x0 = 0.4;
  const auto runs = simulate_batch(n.build(), 10000, 12);
  std::vector<double> drift;
  for (const auto& r : runs) drift.push_back(r.mean_path.back() - r.mean_path.front());
  const double m = std::accumulate(drift.begin(), drift.end(), 0.0) / drift.size();
  double ss = 0.0;
  for (double d : drift) ss += (d - m) * (d - m);
  const double se = std::sqrt(ss / (drift.size() - 1) / drift.size());
  EXPECT_LE(std::abs(m), 3 * se);
}

TEST(Network, SubstepsShareOutputGridNoise) {
  // With a = 0 and no jumps the Euler scheme is exact, so refinement changes nothing.
  HomogeneousNetwork n;
  n.M = 3;
  n.bank = {0.0, 0.7, 0.0, 0.0};
  n.rho = 0.5;
  n.jump = JumpKind::none;
  auto coarse = n.build();
  auto fine = coarse;
  fine.substeps = 4;
  const auto a = simulate_network(coarse, 9);
  const auto b = simulate_network(fine, 9);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k <= n.steps; ++k) EXPECT_NEAR(a.paths(i, k), b.paths(i, k), 1e-12);
  }
}

TEST(Network, StepRefinementKeepsSystemicRisk) {
  auto coarse = table1_net(0.5).build();
  auto fine = coarse;
  fine.substeps = 2;
  const auto a = simulate_batch(coarse, 2000, 31);
  const auto b = simulate_batch(fine, 2000, 31);
  const auto sa = sr_mc(a, 0.0), sb = sr_mc(b, 0.0);
  EXPECT_LT(std::abs(sa.value - sb.value), std::max(sa.se, sb.se));
}

TEST(Scenarios, NamesAndUnknown) {
  EXPECT_EQ(scenario_names().size(), 6u);
  try {
    scenario("nope");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("lending_correlated_hawkes"), std::string::npos);
  }
}

TEST(Scenarios, HawkesRow) {
  const auto spec = scenario_preset("lending_correlated_hawkes");
  EXPECT_EQ(spec.M, 10u);
  EXPECT_EQ(spec.banks[0].a, 10.0);
  EXPECT_EQ(spec.banks[0].sigma, 1.0);
  EXPECT_EQ(spec.banks[0].c_hat, -0.2);
  EXPECT_EQ(spec.rho, 0.2);
  EXPECT_EQ(spec.jump.kind, JumpKind::hawkes);
  EXPECT_DOUBLE_EQ(spec.jump.hawkes.mu[3], 1.0);
  EXPECT_DOUBLE_EQ(spec.jump.hawkes.alpha(2, 5), 0.2);
  EXPECT_DOUBLE_EQ(spec.jump.hawkes.beta[0], 0.2);
  EXPECT_EQ(spec.x0[0], 0.0);
  EXPECT_EQ(spec.D, -0.7);
  EXPECT_EQ(spec.steps, 100u);
}

TEST(Scenarios, FirstRow) {
  const auto spec = scenario_preset("no_lending_independent");
  EXPECT_EQ(spec.banks[0].a, 0.0);
  EXPECT_EQ(spec.banks[0].sigma, 1.0);
  EXPECT_EQ(spec.banks[0].c_hat, 0.0);
  EXPECT_EQ(spec.rho, 0.2);
  EXPECT_EQ(spec.jump.kind, JumpKind::none);
}

TEST(SizeDistribution, Means) {
  EXPECT_DOUBLE_EQ((SizeDistribution{SizeDistribution::Kind::point, 2.5, 0.0, false}).mean(), 2.5);
  EXPECT_DOUBLE_EQ((SizeDistribution{SizeDistribution::Kind::uniform, 1.0, 3.0, true}).mean(), -2.0);
  EXPECT_DOUBLE_EQ((SizeDistribution{SizeDistribution::Kind::lognormal, 0.1, 0.4, false}).mean(),
                   std::exp(0.1 + 0.08));
  EXPECT_THROW((SizeDistribution{SizeDistribution::Kind::uniform, 3.0, 1.0, false}).validate(),
               std::invalid_argument);
}
