#include "hawkesnet/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>

#include "hawkesnet/limit.hpp"

namespace hawkesnet {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return s;
}

bool parse_number(const std::string& text, double& out) {
  if (text.empty()) return false;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size() && std::isfinite(out);
}

bool parse_date(const std::string& text, std::tuple<int, int, int>& out) {
  int y = 0, m = 0, d = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%4d-%2d-%2d%c", &y, &m, &d, &tail) != 3) return false;
  if (text.size() != 10 || m < 1 || m > 12 || d < 1 || d > 31) return false;
  out = {y, m, d};
  return true;
}

}  // namespace

ObservedSeries make_series(std::vector<double> times, std::vector<double> values) {
  if (times.size() != values.size()) throw std::invalid_argument("series: times and values differ in length");
  if (times.size() < 10) throw std::invalid_argument("series: need at least 10 points");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) {
      throw std::invalid_argument("series: times must be strictly increasing (row " + std::to_string(k + 1) + ")");
    }
  }
  const double t0 = times.front();
  for (auto& t : times) t -= t0;
  return ObservedSeries{std::move(times), std::move(values)};
}

ObservedSeries load_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open series file " + path.string());

  enum class Format { unknown, numeric, dated } format = Format::unknown;
  std::vector<double> times, values;
  std::tuple<int, int, int> previous_date{};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw std::runtime_error(path.string() + ": row " + std::to_string(line_no) + ": expected two columns");
    }
    const std::string first = trim(line.substr(0, comma));
    const std::string second = trim(line.substr(comma + 1));
    if (format == Format::unknown) {
      const std::string key = lower(first);
      if ((key == "t" || key == "time") && lower(second) == "value") {
        format = Format::numeric;
      } else if (key == "date" && lower(second) == "value") {
        format = Format::dated;
      } else {
        throw std::runtime_error(path.string() + ": row " + std::to_string(line_no) +
                                 ": header must be 't,value' or 'date,value'");
      }
      continue;
    }
    double value = 0.0;
    if (!parse_number(second, value)) {
      throw std::runtime_error(path.string() + ": row " + std::to_string(line_no) + ": bad value '" + second + "'");
    }
    double t = 0.0;
    if (format == Format::numeric) {
      if (!parse_number(first, t)) {
        throw std::runtime_error(path.string() + ": row " + std::to_string(line_no) + ": bad time '" + first + "'");
      }
      if (!times.empty() && !(t > times.back())) {
        throw std::runtime_error(path.string() + ": row " + std::to_string(line_no) + ": times must increase");
      }
    } else {
      std::tuple<int, int, int> date;
      if (!parse_date(first, date)) {
        throw std::runtime_error(path.string() + ": row " + std::to_string(line_no) + ": bad date '" + first + "'");
      }
      if (!times.empty() && !(date > previous_date)) {
        throw std::runtime_error(path.string() + ": row " + std::to_string(line_no) + ": dates must increase");
      }
      previous_date = date;
      t = static_cast<double>(times.size());  // trading-day offset
    }
    times.push_back(t);
    values.push_back(value);
  }
  if (format == Format::unknown) throw std::runtime_error(path.string() + ": empty series file");
  try {
    return make_series(std::move(times), std::move(values));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

std::vector<double> q1_values(const Q1Params& p, std::span<const double> times) {
  LimitParams lp;
  lp.mu = p.mu;
  lp.x = p.x;
  lp.alpha = p.alpha;
  lp.beta = p.beta;
  lp.c = p.c;
  std::vector<double> out(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) out[k] = q1_at(lp, times[k]);
  return out;
}

double q1_sse(const ObservedSeries& series, const Q1Params& p) {
  const auto fitted = q1_values(p, series.times);
  double sse = 0.0;
  for (std::size_t k = 0; k < fitted.size(); ++k) {
    const double r = fitted[k] - series.values[k];
    sse += r * r;
  }
  return sse;
}

Q1Bounds default_bounds(const ObservedSeries& series) {
  const auto [lo, hi] = std::minmax_element(series.values.begin(), series.values.end());
  const double spread = std::max(1.0, *hi - *lo);
  const double inf = std::numeric_limits<double>::infinity();
  Q1Bounds b;
  b.lower = {0.0, *lo - spread, 0.0, 1e-8, -inf};
  b.upper = {inf, *hi + spread, inf, inf, 0.0};
  return b;
}

SimplexResult bounded_nelder_mead(const std::function<double(std::span<const double>)>& f,
                                  std::vector<double> start, std::span<const double> lower,
                                  std::span<const double> upper, const FitOptions& options) {
  const std::size_t n = start.size();
  auto clamp = [&](std::vector<double>& v) {
    for (std::size_t i = 0; i < n; ++i) v[i] = std::clamp(v[i], lower[i], upper[i]);
  };

  SimplexResult res;
  auto eval = [&](const std::vector<double>& v) {
    ++res.evaluations;
    const double y = f(v);
    return std::isfinite(y) ? y : std::numeric_limits<double>::infinity();
  };

  std::vector<std::vector<double>> simplex(n + 1, start);
  std::vector<double> fv(n + 1);
  auto build = [&](const std::vector<double>& base) {
    simplex.assign(n + 1, base);
    fv[0] = eval(base);
    for (std::size_t i = 0; i < n; ++i) {
      double step = 0.1 * std::abs(base[i]);
      if (step == 0.0) {
        const double range = upper[i] - lower[i];
        step = std::isfinite(range) ? 0.05 * range : 0.1;
      }
      auto& v = simplex[i + 1];
      v[i] = base[i] + step > upper[i] ? base[i] - step : base[i] + step;
      clamp(v);
      fv[i + 1] = eval(v);
    }
  };

  clamp(start);
  build(start);
  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);

  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return fv[l] < fv[r]; });
    std::vector<std::vector<double>> s(n + 1);
    std::vector<double> v(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      s[k] = simplex[order[k]];
      v[k] = fv[order[k]];
    }
    simplex.swap(s);
    fv.swap(v);
  };

  auto collapsed = [&] {
    const double spread = fv[n] - fv[0];
    if (spread <= options.tolerance * std::abs(fv[0]) || spread <= std::numeric_limits<double>::min()) return true;
    double diameter = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        const double scale = std::max(std::abs(simplex[0][i]), 1e-8);
        diameter = std::max(diameter, std::abs(simplex[k][i] - simplex[0][i]) / scale);
      }
    }
    return diameter <= 1e-13;
  };

  auto point = [&](double coef, const std::vector<double>& worst, std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = centroid[i] + coef * (worst[i] - centroid[i]);
    clamp(out);
  };

  double best_at_restart = std::numeric_limits<double>::infinity();
  while (res.evaluations < options.max_evaluations) {
    sort_simplex();
    if (collapsed()) {
      // Restart around the best vertex; stop once a restart stops paying off.
      const double best = fv[0];
      if (best_at_restart - best <= options.tolerance * std::abs(best) || best == 0.0) {
        res.converged = true;
        break;
      }
      best_at_restart = best;
      ++res.restarts;
      const auto base = simplex[0];
      build(base);
      continue;
    }
    ++res.iterations;
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k][i] / static_cast<double>(n);
    }
    const auto& worst = simplex[n];
    point(-1.0, worst, trial);
    const double fr = eval(trial);
    if (fr < fv[0]) {
      point(-2.0, worst, trial2);
      const double fe = eval(trial2);
      if (fe < fr) {
        simplex[n] = trial2;
        fv[n] = fe;
      } else {
        simplex[n] = trial;
        fv[n] = fr;
      }
    } else if (fr < fv[n - 1]) {
      simplex[n] = trial;
      fv[n] = fr;
    } else {
      const bool outside = fr < fv[n];
      point(outside ? -0.5 : 0.5, worst, trial2);
      const double fc = eval(trial2);
      if (fc < std::min(fr, fv[n])) {
        simplex[n] = trial2;
        fv[n] = fc;
      } else {
        for (std::size_t k = 1; k <= n; ++k) {
          for (std::size_t i = 0; i < n; ++i) simplex[k][i] = simplex[0][i] + 0.5 * (simplex[k][i] - simplex[0][i]);
          clamp(simplex[k]);
          fv[k] = eval(simplex[k]);
        }
      }
    }
  }
  sort_simplex();
  res.x = simplex[0];
  res.value = fv[0];
  return res;
}

CalibResult fit_q1(const ObservedSeries& series, const Q1Params& initial_guess, const Q1Bounds& bounds,
                   const FitOptions& options) {
  const auto lo = bounds.lower.to_array();
  const auto hi = bounds.upper.to_array();
  const auto guess = initial_guess.to_array();
  static constexpr const char* names[] = {"mu", "x", "alpha", "beta", "c"};
  for (std::size_t i = 0; i < 5; ++i) {
    if (!(lo[i] <= hi[i])) throw std::invalid_argument(std::string("fit_q1: empty bounds for ") + names[i]);
    if (!(guess[i] >= lo[i] && guess[i] <= hi[i])) {
      throw std::invalid_argument(std::string("fit_q1: initial guess outside bounds for ") + names[i]);
    }
  }
  if (lo[0] < 0.0 || lo[2] < 0.0 || !(lo[3] > 0.0) || hi[4] > 0.0) {
    throw std::invalid_argument("fit_q1: bounds must satisfy mu >= 0, alpha >= 0, beta > 0, c <= 0");
  }

  auto objective = [&](std::span<const double> v) {
    return q1_sse(series, Q1Params{v[0], v[1], v[2], v[3], v[4]});
  };
  const SimplexResult sr = bounded_nelder_mead(objective, std::vector<double>(guess.begin(), guess.end()), lo,
                                               hi, options);
  CalibResult res;
  res.initial_sse = q1_sse(series, initial_guess);
  res.params = Q1Params{sr.x[0], sr.x[1], sr.x[2], sr.x[3], sr.x[4]};
  res.sse = sr.value;
  res.iterations = sr.iterations;
  res.evaluations = sr.evaluations;
  res.restarts = sr.restarts;
  res.converged = sr.converged;
  return res;
}

}  // namespace hawkesnet
