#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "hawkesnet/calibration.hpp"

using namespace hawkesnet;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name, const std::string& text) {
  const auto dir = fs::temp_directory_path() / "hawkesnet_calibration_tests";
  fs::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path;
}

const Q1Params kGenerator{0.3, 1300.0, 0.07, 0.11, -1.6};

ObservedSeries synthetic(std::size_t n = 70) {
  std::vector<double> t(n);
  for (std::size_t k = 0; k < n; ++k) t[k] = static_cast<double>(k);
  return make_series(t, q1_values(kGenerator, t));
}

double rel_sup_error(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) e = std::max(e, std::abs(a[k] - b[k]) / std::abs(b[k]));
  return e;
}

}  // namespace

TEST(LoadSeries, NumericFile) {
  std::string text = "t,value\n";
  for (int k = 0; k < 50; ++k) text += std::to_string(10 + k) + "," + std::to_string(100.0 - k) + "\n";
  const auto s = load_series(temp_file("numeric.csv", text));
  ASSERT_EQ(s.times.size(), 50u);
  EXPECT_EQ(s.times.front(), 0.0);
  EXPECT_EQ(s.times.back(), 49.0);
  EXPECT_EQ(s.values[3], 97.0);
}

TEST(LoadSeries, DatedFileUsesTradingDayOffsets) {
  std::string text = "# closing levels\ndate,value\n";
  auto day = std::chrono::sys_days{std::chrono::year{2019} / 1 / 2};
  int written = 0;
  while (written < 70) {
    const std::chrono::weekday wd{day};
    if (wd != std::chrono::Saturday && wd != std::chrono::Sunday) {
      const std::chrono::year_month_day ymd{day};
      char buf[16];
      std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                    static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
      text += std::string(buf) + "," + std::to_string(2500 + written) + "\n";
      ++written;
    }
    day += std::chrono::days{1};
  }
  const auto s = load_series(temp_file("dated.csv", text));
  ASSERT_EQ(s.times.size(), 70u);
  for (std::size_t k = 0; k < 70; ++k) EXPECT_EQ(s.times[k], static_cast<double>(k));
}

TEST(LoadSeries, Errors) {
  EXPECT_THROW(load_series(temp_file("empty.csv", "")), std::runtime_error);
  EXPECT_THROW(load_series(temp_file("header.csv", "x,y\n1,2\n")), std::runtime_error);
  std::string bad = "t,value\n";
  for (int k = 0; k < 12; ++k) bad += std::to_string(k) + "," + (k == 7 ? "oops" : "1.0") + "\n";
  try {
    load_series(temp_file("bad.csv", bad));
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("row 9"), std::string::npos) << e.what();
  }
  std::string back = "t,value\n0,1\n1,1\n3,1\n2,1\n";
  EXPECT_THROW(load_series(temp_file("back.csv", back)), std::runtime_error);
  std::string few = "t,value\n0,1\n1,1\n";
  EXPECT_THROW(load_series(temp_file("few.csv", few)), std::runtime_error);
  EXPECT_THROW(load_series("/nonexistent/series.csv"), std::runtime_error);
}

TEST(MakeSeries, Validates) {
  EXPECT_THROW(make_series({0, 1, 2}, {1, 2, 3}), std::invalid_argument);
  std::vector<double> t(10, 1.0), v(10, 0.0);
  EXPECT_THROW(make_series(t, v), std::invalid_argument);
}

TEST(Q1Objective, ScalingInvarianceOfCAndMu) {
  const auto s = synthetic();
  for (double kappa : {0.5, 2.0, 7.3}) {
    Q1Params scaled = kGenerator;
    scaled.c *= kappa;
    scaled.mu /= kappa;
    const auto a = q1_values(kGenerator, s.times), b = q1_values(scaled, s.times);
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 4 * std::numeric_limits<double>::epsilon() * a[k]);
    Q1Params off = kGenerator;
    off.x += 1.0;
    EXPECT_NEAR(q1_sse(s, off), q1_sse(s, Q1Params{scaled.mu, off.x, off.alpha, off.beta, scaled.c}), 1e-12 * q1_sse(s, off));
  }
}

TEST(FitQ1, RecoversSyntheticCurve) {
  const auto s = synthetic();
  const Q1Params guess{0.25, 1250.0, 0.05, 0.09, -1.2};
  const auto r = fit_q1(s, guess, default_bounds(s));
  EXPECT_LE(r.sse, r.initial_sse);
  EXPECT_LE(rel_sup_error(q1_values(r.params, s.times), s.values), 1e-3);
  EXPECT_GE(r.params.mu, 0.0);
  EXPECT_GE(r.params.alpha, 0.0);
  EXPECT_GT(r.params.beta, 0.0);
  EXPECT_LE(r.params.c, 0.0);
  EXPECT_LE(r.evaluations, 10000u);
}

TEST(FitQ1, ConstantSeries) {
  std::vector<double> t(20), v(20, 42.0);
  for (int k = 0; k < 20; ++k) t[k] = k;
  const auto s = make_series(t, v);
  const auto r = fit_q1(s, Q1Params{0.2, 41.5, 0.1, 0.5, -0.3}, default_bounds(s));
  EXPECT_NEAR(r.params.c * r.params.mu, 0.0, 1e-6);
  for (double q : q1_values(r.params, s.times)) EXPECT_NEAR(q, 42.0, 1e-4);
}

TEST(FitQ1, LinearSeriesIsPoissonLimit) {
  std::vector<double> t(30), v(30);
  for (int k = 0; k < 30; ++k) {
    t[k] = k;
    v[k] = 10.0 - 0.05 * k;
  }
  const auto s = make_series(t, v);
  const auto r = fit_q1(s, Q1Params{0.1, 9.0, 0.2, 1.0, -0.2}, default_bounds(s));
  EXPECT_LT(r.sse, 1e-6);
}

TEST(FitQ1, SseNeverWorseThanGuess) {
  const auto s = synthetic(40);
  const Q1Params guess{1.0, 1250.0, 0.01, 0.5, -0.1};
  FitOptions few;
  few.max_evaluations = 30;
  const auto r = fit_q1(s, guess, default_bounds(s), few);
  EXPECT_LE(r.sse, r.initial_sse);
  EXPECT_FALSE(r.converged);
}

TEST(FitQ1, BoundsErrors) {
  const auto s = synthetic(20);
  auto b = default_bounds(s);
  EXPECT_THROW(fit_q1(s, Q1Params{0.3, 1e6, 0.07, 0.11, -1.6}, b), std::invalid_argument);
  b.lower.beta = 0.0;
  EXPECT_THROW(fit_q1(s, kGenerator, b), std::invalid_argument);
  b = default_bounds(s);
  b.lower.alpha = 1.0;
  b.upper.alpha = 0.5;
  EXPECT_THROW(fit_q1(s, kGenerator, b), std::invalid_argument);
}

TEST(NelderMead, Rosenbrock) {
  auto f = [](std::span<const double> x) {
    return 100 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]) + (1 - x[0]) * (1 - x[0]);
  };
  const std::vector<double> lo = {-5, -5}, hi = {5, 5};
  const auto r = bounded_nelder_mead(f, {-1.2, 1.0}, lo, hi, FitOptions{});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-5);
  EXPECT_NEAR(r.x[1], 1.0, 1e-5);
}

TEST(NelderMead, ActiveBound) {
  auto f = [](std::span<const double> x) { return (x[0] - 3.0) * (x[0] - 3.0) + x[1] * x[1]; };
  const std::vector<double> lo = {0, -1}, hi = {2, 1};
  const auto r = bounded_nelder_mead(f, {0.5, 0.5}, lo, hi, FitOptions{});
  EXPECT_NEAR(r.x[0], 2.0, 1e-8);
  EXPECT_NEAR(r.x[1], 0.0, 1e-6);
  EXPECT_LE(r.x[0], 2.0);
}
