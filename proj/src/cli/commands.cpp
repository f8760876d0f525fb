#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "csv.hpp"
#include "hawkesnet/calibration.hpp"
#include "hawkesnet/limit.hpp"
#include "hawkesnet/network.hpp"
#include "hawkesnet/rng.hpp"
#include "svg.hpp"

namespace hawkesnet::cli {

namespace fs = std::filesystem;

namespace {

std::vector<double> x0_rows(const ExperimentConfig& c) {
  return c.x0_grid.empty() ? std::vector<double>{c.network.x0} : c.x0_grid;
}

std::uint64_t lln_seed(const ExperimentConfig& c) { return splitmix64(c.seed + 1); }

std::string fixed(double v, int digits = 3) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(digits) << v;
  return o.str();
}

struct Context {
  ExperimentConfig config;
  std::string fp;
  fs::path dir;
  std::ostream& out;

  fs::path file(const std::string& name) const { return dir / name; }
  void wrote(const fs::path& p) const { out << "wrote " << p.string() << "\n"; }
};

void write_text(const Context& ctx, const std::string& name, const std::string& text) {
  const auto path = ctx.file(name);
  std::ofstream o(path, std::ios::binary);
  o << text;
  if (!o) throw std::runtime_error("cannot write " + path.string());
  ctx.wrote(path);
}

// --- simulate ---------------------------------------------------------------

void cmd_simulate(const Context& ctx) {
  const auto spec = ctx.config.network_spec();
  const NetworkSimulator sim(spec);
  if (sim.jumps_supercritical()) ctx.out << "warning: jump process is supercritical\n";
  for (std::size_t j = 0; j < ctx.config.path_runs; ++j) {
    const auto result = sim.run(path_seed(ctx.config.seed, j));
    std::vector<std::string> cols{"t"};
    for (std::size_t i = 0; i < spec.M; ++i) cols.push_back("bank_" + std::to_string(i));
    const auto paths_file = ctx.file("paths_" + std::to_string(j) + ".csv");
    CsvWriter paths(paths_file, ctx.fp);
    paths.header(cols);
    std::vector<double> row(spec.M + 1);
    for (std::size_t k = 0; k < result.grid.size(); ++k) {
      row[0] = result.grid[k];
      for (std::size_t i = 0; i < spec.M; ++i) row[i + 1] = result.paths(i, k);
      paths.row(row);
    }
    paths.close();
    ctx.wrote(paths_file);

    const auto jumps_file = ctx.file("jumps_" + std::to_string(j) + ".csv");
    CsvWriter jumps(jumps_file, ctx.fp);
    jumps.header({"time", "node", "intensity"});
    for (const auto& e : result.jump_log.events) {
      const double v[] = {e.time, static_cast<double>(e.node), e.intensity};
      jumps.row(v);
    }
    jumps.close();
    ctx.wrote(jumps_file);

    if (!result.factor_path.empty()) {
      const auto factor_file = ctx.file("factor_" + std::to_string(j) + ".csv");
      CsvWriter f(factor_file, ctx.fp);
      f.header({"t", "y"});
      for (std::size_t k = 0; k < result.grid.size(); ++k) {
        const double v[] = {result.grid[k], result.factor_path[k]};
        f.row(v);
      }
      f.close();
      ctx.wrote(factor_file);
    }

    if (ctx.config.plots) {
      std::vector<Series> series;
      const std::size_t shown = std::min<std::size_t>(spec.M, 10);
      for (std::size_t i = 0; i < shown; ++i) {
        auto r = result.paths.row(i);
        series.push_back({"bank " + std::to_string(i), result.grid, {r.begin(), r.end()}});
      }
      series.push_back({"default level", {0.0, spec.T}, {spec.D, spec.D}});
      if (!std::isfinite(spec.D)) series.pop_back();
      const auto svg = ctx.file("paths_" + std::to_string(j) + ".svg");
      write_line_chart(svg, series, {"Reserve paths (run " + std::to_string(j) + ")", "t", "X"});
      ctx.wrote(svg);
    }
    ctx.out << "run " << j << ": " << result.jump_log.events.size() << " jumps\n";
  }
}

// --- limit ------------------------------------------------------------------

void cmd_limit(const Context& ctx) {
  const auto& c = ctx.config;
  const auto p = c.limit_params();
  const auto curves = limit_curves(p, uniform_grid(c.network.T, c.network.steps), c.scheme);
  const auto path = ctx.file("limit_curves.csv");
  CsvWriter w(path, ctx.fp);
  w.header({"t", "lambda_bar", "q1"});
  for (std::size_t k = 0; k < curves.grid.size(); ++k) {
    const double v[] = {curves.grid[k], curves.lambda_bar[k], curves.q1[k]};
    w.row(v);
  }
  w.close();
  ctx.wrote(path);
  if (c.plots) {
    write_line_chart(ctx.file("lambda_bar.svg"), {{"lambda_bar", curves.grid, curves.lambda_bar}},
                     {"Limit intensity", "t", "lambda_bar"});
    write_line_chart(ctx.file("q1.svg"), {{"Q1", curves.grid, curves.q1}}, {"Limit mean reserve", "t", "Q1"});
    ctx.wrote(ctx.file("lambda_bar.svg"));
    ctx.wrote(ctx.file("q1.svg"));
  }
  ctx.out << "Q1(T) = " << format_number(curves.q1.back()) << "\n";
}

// --- risk -------------------------------------------------------------------

void emit_risk(const Context& ctx, const std::vector<RiskRow>& rows, const std::string& stem,
               const std::string& title) {
  const auto table_path = ctx.file(stem + "_table.csv");
  CsvWriter t(table_path, ctx.fp);
  t.header({"x0", "sr_mc", "sr_mc_se", "add_mc", "add_mc_se", "sr_lln", "sr_lln_se", "add_lln"});
  for (const auto& r : rows) {
    const double v[] = {r.x0, r.sr_mc.value, r.sr_mc.se, r.add_mc.value, r.add_mc.se,
                        r.sr_lln.value, r.sr_lln.se, r.add_lln};
    t.row(v);
  }
  t.close();
  ctx.wrote(table_path);

  const auto report_path = ctx.file(stem + "_report.csv");
  CsvWriter rep(report_path, ctx.fp);
  rep.header({"metric", "value", "se"});
  for (const auto& r : rows) {
    const std::string tag = "[x0=" + format_number(r.x0) + "]";
    const double sr_mc[] = {r.sr_mc.value, r.sr_mc.se};
    const double add_mc[] = {r.add_mc.value, r.add_mc.se};
    const double sr_lln[] = {r.sr_lln.value, r.sr_lln.se};
    const double add_lln[] = {r.add_lln, 0.0};
    rep.row("sr_mc" + tag, sr_mc);
    rep.row("add_mc" + tag, add_mc);
    rep.row("sr_lln" + tag, sr_lln);
    rep.row("add_lln" + tag, add_lln);
  }
  rep.close();
  ctx.wrote(report_path);

  std::ostringstream s;
  s << title << "\n";
  s << "fingerprint " << ctx.fp << ", " << ctx.config.runs << " runs, " << ctx.config.limit_paths
    << " limit paths\n\n";
  s << "            Monte Carlo          Approximation\n";
  s << "  x0        SR       ADD(T)      SR       ADD(T)\n";
  for (const auto& r : rows) {
    s << "  " << std::left << std::setw(8) << fixed(r.x0) << std::right << std::setw(8)
      << fixed(r.sr_mc.value) << std::setw(10) << fixed(r.add_mc.value) << std::setw(12) << fixed(r.sr_lln.value)
      << std::setw(10) << fixed(r.add_lln) << "\n";
  }
  write_text(ctx, stem + "_summary.txt", s.str());
  ctx.out << s.str();

  if (ctx.config.plots && rows.size() > 1) {
    std::vector<double> xs, a, b, c, d;
    for (const auto& r : rows) {
      xs.push_back(r.x0);
      a.push_back(r.sr_mc.value);
      b.push_back(r.sr_lln.value);
      c.push_back(r.add_mc.value);
      d.push_back(r.add_lln);
    }
    write_line_chart(ctx.file(stem + "_sr.svg"), {{"Monte Carlo", xs, a, true}, {"LLN", xs, b, true}},
                     {"Systemic risk", "x0", "SR"});
    write_line_chart(ctx.file(stem + "_add.svg"), {{"Monte Carlo", xs, c, true}, {"LLN", xs, d, true}},
                     {"Average distance to default at T", "x0", "ADD(T)"});
    ctx.wrote(ctx.file(stem + "_sr.svg"));
    ctx.wrote(ctx.file(stem + "_add.svg"));
  }
}

void cmd_risk(const Context& ctx, const std::string& stem, const std::string& title) {
  emit_risk(ctx, risk_table(ctx.config), stem, title);
}

// --- depend -----------------------------------------------------------------

void cmd_depend(const Context& ctx) {
  const auto& c = ctx.config;
  const auto spec = c.network_spec();
  if (c.node_i >= spec.M || c.node_j >= spec.M || c.node_i == c.node_j) {
    throw ConfigError("risk.nodes must name two distinct banks below M = " + std::to_string(spec.M));
  }
  const auto runs = simulate_batch(spec, c.runs, c.seed, c.workers);
  std::vector<double> xi, xj;
  for (const auto& r : runs) {
    xi.push_back(r.terminal[c.node_i] - (c.sample_increments ? r.initial[c.node_i] : 0.0));
    xj.push_back(r.terminal[c.node_j] - (c.sample_increments ? r.initial[c.node_j] : 0.0));
  }
  std::vector<double> q = c.q_grid;
  if (q.empty()) {
    for (int k = 1; k <= 19; ++k) q.push_back(0.05 * k);
  }
  const auto curve = tail_dependence(xi, xj, q, c.tail);
  const bool lower = c.tail == Tail::lower;
  const auto path = ctx.file("dependence.csv");
  CsvWriter w(path, ctx.fp,
              {std::string("tail=") + (lower ? "lower" : "upper") + " negated=" + (lower ? "true" : "false") +
               " sample=" + (c.sample_increments ? "increment" : "level") + " nodes=" +
               std::to_string(c.node_i) + "," + std::to_string(c.node_j)});
  w.header({"q", "p"});
  for (std::size_t k = 0; k < curve.q_grid.size(); ++k) {
    const double v[] = {curve.q_grid[k], curve.p_of_q[k]};
    w.row(v);
  }
  w.close();
  ctx.wrote(path);
  if (c.plots) {
    std::vector<double> indep;
    for (double v : curve.q_grid) indep.push_back(1.0 - v);
    write_line_chart(ctx.file("dependence.svg"),
                     {{"p(q)", curve.q_grid, curve.p_of_q, true}, {"independence 1-q", curve.q_grid, indep}},
                     {"Tail dependence", "q", "p(q)"});
    ctx.wrote(ctx.file("dependence.svg"));
  }
}

// --- fluctuate --------------------------------------------------------------

void cmd_fluctuate(const Context& ctx) {
  const auto& c = ctx.config;
  const auto rows = fluctuation_scaling(c.network, c.M_list, c.runs, c.seed, c.workers);
  const auto path = ctx.file("fluctuation.csv");
  CsvWriter w(path, ctx.fp);
  w.header({"M", "variance", "mean"});
  double lo = INFINITY, hi = 0.0;
  std::vector<double> ms, vs;
  for (const auto& r : rows) {
    const double v[] = {static_cast<double>(r.M), r.variance, r.mean};
    w.row(v);
    lo = std::min(lo, r.variance);
    hi = std::max(hi, r.variance);
    ms.push_back(static_cast<double>(r.M));
    vs.push_back(r.variance);
  }
  w.close();
  ctx.wrote(path);
  std::ostringstream s;
  s << "variance of sqrt(M) (mean_T - Q1(T)), " << c.runs << " runs per M\n";
  for (const auto& r : rows) s << "  M=" << r.M << "  variance=" << format_number(r.variance) << "\n";
  s << "max/min ratio " << format_number(lo > 0 ? hi / lo : INFINITY) << "\n";
  write_text(ctx, "fluctuation_summary.txt", s.str());
  ctx.out << s.str();
  if (c.plots) {
    write_line_chart(ctx.file("fluctuation.svg"), {{"variance", ms, vs, true}},
                     {"CLT scaling", "M", "Var sqrt(M)(mean - Q1)"});
    ctx.wrote(ctx.file("fluctuation.svg"));
  }
}

// --- calibrate --------------------------------------------------------------

void cmd_calibrate(const Context& ctx) {
  const auto& c = ctx.config;
  if (c.calibration_input.empty()) throw ConfigError("calibration.input is required for calibrate");
  ObservedSeries series;
  try {
    series = load_series(c.calibration_input);
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
  Q1Bounds bounds = default_bounds(series);
  if (c.lower_bounds) bounds.lower = *c.lower_bounds;
  if (c.upper_bounds) bounds.upper = *c.upper_bounds;
  Q1Params guess;
  if (c.initial_guess) {
    guess = *c.initial_guess;
  } else {
    const double slope = (series.values.back() - series.values.front()) / series.times.back();
    guess = {0.1, series.values.front(), 0.05, 0.1, slope < 0 ? slope / 0.1 : -1e-3};
    auto g = guess.to_array();
    const auto lo = bounds.lower.to_array(), hi = bounds.upper.to_array();
    for (int k = 0; k < 5; ++k) g[k] = std::clamp(g[k], lo[k], hi[k]);
    guess = Q1Params::from_array(g);
  }
  FitOptions options;
  options.max_evaluations = c.max_evaluations;
  CalibResult res;
  try {
    res = fit_q1(series, guess, bounds, options);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const auto path = ctx.file("calibration.csv");
  CsvWriter w(path, ctx.fp);
  w.header({"parameter", "value"});
  const std::pair<const char*, double> items[] = {
      {"mu", res.params.mu},
      {"x", res.params.x},
      {"alpha", res.params.alpha},
      {"beta", res.params.beta},
      {"c", res.params.c},
      {"sse", res.sse},
      {"initial_sse", res.initial_sse},
      {"iterations", static_cast<double>(res.iterations)},
      {"evaluations", static_cast<double>(res.evaluations)},
      {"restarts", static_cast<double>(res.restarts)},
      {"converged", res.converged ? 1.0 : 0.0},
  };
  for (const auto& [name, value] : items) {
    const double v[] = {value};
    w.row(name, v);
  }
  w.close();
  ctx.wrote(path);

  const auto fitted = q1_values(res.params, series.times);
  const auto curve_path = ctx.file("fitted_curve.csv");
  CsvWriter fc(curve_path, ctx.fp);
  fc.header({"t", "observed", "fitted"});
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    const double v[] = {series.times[k], series.values[k], fitted[k]};
    fc.row(v);
  }
  fc.close();
  ctx.wrote(curve_path);

  std::ostringstream s;
  s << "Q1 calibration on " << series.times.size() << " points from " << c.calibration_input << "\n";
  s << "  mu=" << format_number(res.params.mu) << " x=" << format_number(res.params.x)
    << " alpha=" << format_number(res.params.alpha) << " beta=" << format_number(res.params.beta)
    << " c=" << format_number(res.params.c) << "\n";
  s << "  sse=" << format_number(res.sse) << " (initial " << format_number(res.initial_sse) << ")\n";
  s << "  iterations=" << res.iterations << " evaluations=" << res.evaluations << " restarts=" << res.restarts
    << " converged=" << (res.converged ? "yes" : "no") << "\n";
  s << "  only c*mu, alpha and beta are identified: (c, mu) -> (k c, mu / k) leaves the fit unchanged\n";
  write_text(ctx, "calibration_summary.txt", s.str());
  ctx.out << s.str();
  if (c.plots) {
    write_line_chart(ctx.file("calibration.svg"),
                     {{"observed", series.times, series.values, true}, {"fitted Q1", series.times, fitted}},
                     {"Q1 calibration", "t", "level"});
    ctx.wrote(ctx.file("calibration.svg"));
  }
}

// --- reproduce --------------------------------------------------------------

void cmd_fig2(const Context& ctx) {
  const auto& c = ctx.config;
  const auto all = scenario_default_counts(c.runs, c.seed, c.workers);
  const std::size_t M = scenario("lending_correlated_hawkes").M;
  std::vector<std::vector<double>> pmf;
  for (const auto& s : all) {
    std::vector<double> p(M + 1, 0.0);
    for (auto n : s.counts) p[n] += 1.0 / static_cast<double>(s.counts.size());
    pmf.push_back(p);
  }
  const auto path = ctx.file("fig2_default_pmf.csv");
  CsvWriter w(path, ctx.fp);
  std::vector<std::string> cols{"n"};
  for (const auto& s : all) cols.push_back(s.name);
  w.header(cols);
  for (std::size_t n = 0; n <= M; ++n) {
    std::vector<double> row{static_cast<double>(n)};
    for (const auto& p : pmf) row.push_back(p[n]);
    w.row(row);
  }
  w.close();
  ctx.wrote(path);

  std::ostringstream s;
  s << "Distribution of the number of defaults, M=" << M << ", " << c.runs << " runs per scenario\n";
  for (std::size_t k = 0; k < all.size(); ++k) {
    double mean = 0.0;
    for (std::size_t n = 0; n <= M; ++n) mean += static_cast<double>(n) * pmf[k][n];
    s << "  " << std::left << std::setw(28) << all[k].name << std::right << " P(N=0)=" << fixed(pmf[k][0])
      << " P(N=M)=" << fixed(pmf[k][M]) << " mean=" << fixed(mean, 2) << "\n";
  }
  write_text(ctx, "fig2_summary.txt", s.str());
  ctx.out << s.str();
  if (c.plots) {
    std::vector<std::string> cats;
    for (std::size_t n = 0; n <= M; ++n) cats.push_back(std::to_string(n));
    std::vector<Series> series;
    for (std::size_t k = 0; k < all.size(); ++k) series.push_back({all[k].name, {}, pmf[k]});
    write_bar_chart(ctx.file("fig2_default_pmf.svg"), cats, series,
                    {"Number of defaults", "defaults", "probability"});
    ctx.wrote(ctx.file("fig2_default_pmf.svg"));
  }
}

void cmd_fig5(const Context& ctx) {
  const auto rows = hawkes_vs_poisson(ctx.config);
  const auto path = ctx.file("fig5_hawkes_vs_poisson.csv");
  CsvWriter w(path, ctx.fp);
  w.header({"x0", "sr_hawkes", "sr_poisson", "add_hawkes", "add_poisson"});
  std::vector<double> xs, a, b, c, d;
  std::ostringstream s;
  s << "LLN indicators, Hawkes vs Poisson\n  x0     SR_H    SR_P    ADD_H   ADD_P\n";
  for (const auto& r : rows) {
    const double v[] = {r.x0, r.sr_hawkes, r.sr_poisson, r.add_hawkes, r.add_poisson};
    w.row(v);
    xs.push_back(r.x0);
    a.push_back(r.sr_hawkes);
    b.push_back(r.sr_poisson);
    c.push_back(r.add_hawkes);
    d.push_back(r.add_poisson);
    s << "  " << std::left << std::setw(6) << format_number(r.x0) << std::right << std::setw(7)
      << fixed(r.sr_hawkes) << std::setw(8) << fixed(r.sr_poisson) << std::setw(8) << fixed(r.add_hawkes)
      << std::setw(8) << fixed(r.add_poisson) << "\n";
  }
  w.close();
  ctx.wrote(path);
  write_text(ctx, "fig5_summary.txt", s.str());
  ctx.out << s.str();
  if (ctx.config.plots) {
    write_line_chart(ctx.file("fig5_sr.svg"), {{"Hawkes", xs, a, true}, {"Poisson", xs, b, true}},
                     {"Systemic risk (LLN)", "x0", "SR"});
    write_line_chart(ctx.file("fig5_add.svg"), {{"Hawkes", xs, c, true}, {"Poisson", xs, d, true}},
                     {"Average distance to default (LLN)", "x0", "ADD(T)"});
    ctx.wrote(ctx.file("fig5_sr.svg"));
    ctx.wrote(ctx.file("fig5_add.svg"));
  }
}

}  // namespace

// --- library-level experiment functions --------------------------------------

std::vector<RiskRow> risk_table(const ExperimentConfig& config) {
  std::vector<RiskRow> rows;
  for (double x0 : x0_rows(config)) {
    ExperimentConfig c = config;
    c.network.x0 = x0;
    if (!config.x0_grid.empty()) c.x0_list.clear();
    const auto spec = c.network_spec();
    const auto grid = spec.grid();
    const auto runs = simulate_batch(spec, c.runs, c.seed, c.workers);

    RiskRow row;
    row.x0 = x0;
    row.sr_mc = sr_mc(runs, spec.D);
    row.add_mc = add_mc(runs, grid, grid.back());

    const auto p = c.limit_params();
    const auto curves = limit_curves(p, grid, c.scheme);
    if (c.limit_paths > 0) {
      const auto ens = simulate_limit_state(p, curves, c.limit_paths, lln_seed(c), {false, c.workers});
      row.sr_lln = sr_lln(ens, spec.D);
    }
    row.add_lln = add_lln(curves, grid.back());
    rows.push_back(row);
  }
  return rows;
}

std::vector<OrderingRow> hawkes_vs_poisson(const ExperimentConfig& config) {
  std::vector<OrderingRow> rows;
  const auto grid = uniform_grid(config.network.T, config.network.steps);
  for (double x0 : x0_rows(config)) {
    ExperimentConfig c = config;
    c.network.x0 = x0;
    c.network.jump = JumpKind::hawkes;
    const auto ph = c.limit_params();
    auto pp = ph;
    pp.alpha = 0.0;
    const auto ch = limit_curves(ph, grid, c.scheme);
    const auto cp = limit_curves(pp, grid, c.scheme);
    const auto eh = simulate_limit_state(ph, ch, c.limit_paths, lln_seed(c), {false, c.workers});
    const auto ep = simulate_limit_state(pp, cp, c.limit_paths, lln_seed(c), {false, c.workers});
    rows.push_back({x0, sr_lln(eh, c.network.D).value, sr_lln(ep, c.network.D).value, add_lln(ch, grid.back()),
                    add_lln(cp, grid.back())});
  }
  return rows;
}

std::vector<ScenarioCounts> scenario_default_counts(std::size_t runs, std::uint64_t seed, unsigned workers) {
  std::vector<ScenarioCounts> out;
  for (const auto& name : scenario_names()) {
    const auto spec = scenario_preset(name);
    const auto batch = simulate_batch(spec, runs, seed, workers);
    out.push_back({name, default_counts(batch, spec.D)});
  }
  return out;
}

ExperimentConfig table_config(int table) {
  if (table != 1 && table != 2) throw std::invalid_argument("table must be 1 or 2");
  ExperimentConfig c;
  auto& n = c.network;
  n.M = 300;
  n.bank = {0.5, 0.5, -0.2, 0.0};
  n.rho = 0.0;
  n.jump = JumpKind::hawkes;
  n.mu = table == 1 ? 0.01 : 0.05;
  n.alpha = 1.0;
  n.beta = 1.2;
  n.scaling = HomogeneousNetwork::KernelScaling::mean_field;
  n.D = 0.0;
  n.T = 1.0;
  n.steps = 100;
  c.runs = 5000;
  c.scheme = LambdaScheme::paper_euler;
  c.limit_paths = 100000;
  c.x0_grid = {table == 1 ? 0.002 : 0.01, 0.1, 0.2, 0.5, 0.8, 1.0};
  n.x0 = c.x0_grid.front();
  return c;
}

ExperimentConfig fig2_config() {
  ExperimentConfig c;
  c.network = scenario("lending_correlated_hawkes");
  c.runs = 10000;
  return c;
}

ExperimentConfig fig5_config() {
  ExperimentConfig c;
  auto& n = c.network;
  n.M = 300;
  n.bank = {0.5, 0.5, -1.0, 0.0};
  n.jump = JumpKind::hawkes;
  n.mu = 0.2;
  n.alpha = 1.2;
  n.beta = 1.2;
  n.D = 0.0;
  n.T = 1.0;
  n.steps = 100;
  c.scheme = LambdaScheme::paper_euler;
  c.limit_paths = 100000;
  for (int k = 0; k <= 10; ++k) c.x0_grid.push_back(0.1 * k);
  return c;
}

// --- argument handling ------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hawkes-driven interbank network simulator", "hawkesnet"};
  app.require_subcommand(1);

  std::string config_file, out_dir, target;
  std::vector<std::string> sets;
  unsigned workers = 0;
  std::uint64_t seed = 0;
  bool no_plots = false;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"simulate", "Simulate reserve paths and write one CSV per run"},
      {"limit", "Compute the limit intensity and mean reserve curves"},
      {"risk", "Compare Monte Carlo and LLN systemic risk indicators"},
      {"depend", "Estimate the tail dependence curve of two banks"},
      {"fluctuate", "Measure the CLT scaling of the empirical mean"},
      {"calibrate", "Fit the mean reserve curve to an observed series"},
      {"reproduce", "Run a canonical configuration: table1, table2, fig2 or fig5"},
  };
  std::vector<CLI::App*> subs;
  CLI::Option* workers_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", config_file, "TOML configuration file")->check(CLI::ExistingFile);
    sub->add_option("--set", sets, "Override section.key=value (repeatable)");
    sub->add_option("-w,--workers", workers, "Worker threads (default: all cores)");
    sub->add_option("-s,--seed", seed, "Global seed");
    sub->add_option("-o,--out", out_dir, "Output directory");
    sub->add_flag("--no-plots", no_plots, "Skip SVG output");
    if (name == "reproduce") {
      sub->add_option("target", target, "table1 | table2 | fig2 | fig5")
          ->required()
          ->check(CLI::IsMember({"table1", "table2", "fig2", "fig5"}));
    }
    subs.push_back(sub);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  CLI::App* chosen = nullptr;
  for (auto* sub : subs) {
    if (sub->parsed()) chosen = sub;
  }
  workers_opt = chosen->get_option("--workers");
  seed_opt = chosen->get_option("--seed");
  out_opt = chosen->get_option("--out");
  const std::string command = chosen->get_name();

  try {
    ExperimentConfig base;
    if (command == "reproduce") {
      if (target == "table1") base = table_config(1);
      if (target == "table2") base = table_config(2);
      if (target == "fig2") base = fig2_config();
      if (target == "fig5") base = fig5_config();
    }
    ExperimentConfig config = load_config(config_file, sets, base);
    if (workers_opt->count()) config.workers = workers;
    if (seed_opt->count()) config.seed = seed;
    if (out_opt->count()) config.out_dir = out_dir;
    if (no_plots) config.plots = false;

    Context ctx{config, fingerprint(config), config.out_dir, out};
    fs::create_directories(ctx.dir);
    write_text(ctx, "config_normalized.toml", normalized_config(config));

    if (command == "simulate") cmd_simulate(ctx);
    if (command == "limit") cmd_limit(ctx);
    if (command == "risk") cmd_risk(ctx, "risk", "Systemic risk: Monte Carlo vs LLN");
    if (command == "depend") cmd_depend(ctx);
    if (command == "fluctuate") cmd_fluctuate(ctx);
    if (command == "calibrate") cmd_calibrate(ctx);
    if (command == "reproduce") {
      if (target == "table1") cmd_risk(ctx, "table1", "Table 1: mu=0.01, alpha=1, beta=1.2, a=0.5, sigma=0.5, c=-0.2, D=0");
      if (target == "table2") cmd_risk(ctx, "table2", "Table 2: mu=0.05, alpha=1, beta=1.2, a=0.5, sigma=0.5, c=-0.2, D=0");
      if (target == "fig2") cmd_fig2(ctx);
      if (target == "fig5") cmd_fig5(ctx);
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical failure at step " << e.step() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace hawkesnet::cli
