#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace hawkesnet::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

bool parse_number(const std::string& text, double& out) {
  if (text.empty()) return false;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size() && !std::isnan(out);
}

std::string unquote(const std::string& token, const std::string& origin) {
  std::string out;
  for (std::size_t i = 1; i + 1 < token.size(); ++i) {
    char ch = token[i];
    if (ch == '\\') {
      if (i + 2 >= token.size()) throw ConfigError(origin + ": bad escape in string");
      const char next = token[++i];
      switch (next) {
        case 'n': ch = '\n'; break;
        case 't': ch = '\t'; break;
        case '"': ch = '"'; break;
        case '\\': ch = '\\'; break;
        default: throw ConfigError(origin + ": unsupported escape \\" + std::string(1, next));
      }
    }
    out.push_back(ch);
  }
  return out;
}

std::variant<double, std::string> parse_scalar(const std::string& token, const std::string& origin) {
  if (token.size() >= 2 && token.front() == '"' && token.back() == '"') return unquote(token, origin);
  double v = 0.0;
  if (parse_number(token, v)) return v;
  throw ConfigError(origin + ": cannot parse value '" + token + "'");
}

// Splits array/inline text on commas outside quotes.
std::vector<std::string> split_items(const std::string& body) {
  std::vector<std::string> items;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char ch = body[i];
    if (ch == '"' && (i == 0 || body[i - 1] != '\\')) quoted = !quoted;
    if (ch == ',' && !quoted) {
      items.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!trim(current).empty()) items.push_back(trim(current));
  return items;
}

TomlValue parse_value(const std::string& text, const std::string& origin) {
  if (text.empty()) throw ConfigError(origin + ": missing value");
  if (text == "true") return true;
  if (text == "false") return false;
  if (text.front() == '[') {
    if (text.back() != ']') throw ConfigError(origin + ": unterminated array");
    TomlArray array;
    for (const auto& item : split_items(text.substr(1, text.size() - 2))) {
      if (item.empty()) throw ConfigError(origin + ": empty array element");
      array.push_back(parse_scalar(item, origin));
    }
    return array;
  }
  auto scalar = parse_scalar(text, origin);
  if (auto* d = std::get_if<double>(&scalar)) return *d;
  return std::get<std::string>(scalar);
}

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-')) return false;
  }
  return true;
}

// --- typed accessors ---------------------------------------------------------

const std::string& where(const TomlEntry& e) { return e.origin; }

std::string full_key(const TomlEntry& e) { return e.section.empty() ? e.key : e.section + "." + e.key; }

[[noreturn]] void type_error(const TomlEntry& e, const char* expected) {
  throw ConfigError(where(e) + ": key '" + full_key(e) + "' expects " + expected);
}

double number(const TomlEntry& e) {
  if (const auto* d = std::get_if<double>(&e.value)) return *d;
  type_error(e, "a number");
}

std::size_t count(const TomlEntry& e) {
  const double d = number(e);
  if (!(d >= 0.0) || d != std::floor(d) || d > 1e15) type_error(e, "a non-negative integer");
  return static_cast<std::size_t>(d);
}

bool boolean(const TomlEntry& e) {
  if (const auto* b = std::get_if<bool>(&e.value)) return *b;
  type_error(e, "true or false");
}

std::string text(const TomlEntry& e) {
  if (const auto* s = std::get_if<std::string>(&e.value)) return *s;
  type_error(e, "a string");
}

std::vector<double> numbers(const TomlEntry& e) {
  const auto* a = std::get_if<TomlArray>(&e.value);
  if (!a) type_error(e, "an array of numbers");
  std::vector<double> out;
  for (const auto& item : *a) {
    const auto* d = std::get_if<double>(&item);
    if (!d) type_error(e, "an array of numbers");
    out.push_back(*d);
  }
  return out;
}

std::vector<std::size_t> counts(const TomlEntry& e) {
  std::vector<std::size_t> out;
  for (double d : numbers(e)) {
    if (!(d >= 0.0) || d != std::floor(d)) type_error(e, "an array of non-negative integers");
    out.push_back(static_cast<std::size_t>(d));
  }
  return out;
}

// Scalar broadcast to a homogeneous value, or an array of per-bank values.
void scalar_or_list(const TomlEntry& e, double& scalar, std::vector<double>& list) {
  if (std::holds_alternative<TomlArray>(e.value)) {
    list = numbers(e);
  } else {
    scalar = number(e);
    list.clear();
  }
}

template <typename Enum>
Enum choice(const TomlEntry& e, const std::vector<std::pair<std::string, Enum>>& options) {
  const std::string s = text(e);
  for (const auto& [name, value] : options) {
    if (s == name) return value;
  }
  std::string valid;
  for (const auto& [name, value] : options) valid += " " + name;
  throw ConfigError(where(e) + ": key '" + full_key(e) + "' has invalid value '" + s + "'; valid:" + valid);
}

Q1Params five(const TomlEntry& e) {
  const auto v = numbers(e);
  if (v.size() != 5) type_error(e, "[mu, x, alpha, beta, c]");
  return Q1Params{v[0], v[1], v[2], v[3], v[4]};
}

const std::vector<std::pair<std::string, JumpKind>> kJumpKinds = {
    {"none", JumpKind::none},
    {"poisson", JumpKind::poisson},
    {"hawkes", JumpKind::hawkes},
    {"compound_hawkes", JumpKind::compound_hawkes},
};
const std::vector<std::pair<std::string, HomogeneousNetwork::KernelScaling>> kScalings = {
    {"mean_field", HomogeneousNetwork::KernelScaling::mean_field},
    {"raw", HomogeneousNetwork::KernelScaling::raw},
};
const std::vector<std::pair<std::string, SizeDistribution::Kind>> kSizeKinds = {
    {"point", SizeDistribution::Kind::point},
    {"uniform", SizeDistribution::Kind::uniform},
    {"lognormal", SizeDistribution::Kind::lognormal},
};
const std::vector<std::pair<std::string, FactorSpec::Drift>> kDrifts = {
    {"zero", FactorSpec::Drift::zero},
    {"constant", FactorSpec::Drift::constant},
    {"mean_reverting", FactorSpec::Drift::mean_reverting},
};
const std::vector<std::pair<std::string, FactorSpec::Vol>> kVols = {
    {"constant", FactorSpec::Vol::constant},
    {"proportional", FactorSpec::Vol::proportional},
};
const std::vector<std::pair<std::string, LambdaScheme>> kSchemes = {
    {"paper_euler", LambdaScheme::paper_euler},
    {"exact", LambdaScheme::exact},
};
const std::vector<std::pair<std::string, Tail>> kTails = {{"upper", Tail::upper}, {"lower", Tail::lower}};

template <typename Enum>
std::string name_of(const std::vector<std::pair<std::string, Enum>>& options, Enum value) {
  for (const auto& [name, v] : options) {
    if (v == value) return name;
  }
  return "?";
}

using Setter = std::function<void(ExperimentConfig&, const TomlEntry&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto factor = [](ExperimentConfig& c) -> FactorSpec& {
      if (!c.network.factor) c.network.factor.emplace();
      return *c.network.factor;
    };
    t["seed"] = [](auto& c, const auto& e) { c.seed = static_cast<std::uint64_t>(count(e)); };
    t["workers"] = [](auto& c, const auto& e) { c.workers = static_cast<unsigned>(count(e)); };

    t["network.preset"] = [](auto& c, const auto& e) {
      c.preset = text(e);
      try {
        c.network = scenario(c.preset);
      } catch (const std::invalid_argument& err) {
        throw ConfigError(where(e) + ": " + err.what());
      }
    };
    t["network.M"] = [](auto& c, const auto& e) { c.network.M = count(e); };
    t["network.a"] = [](auto& c, const auto& e) { scalar_or_list(e, c.network.bank.a, c.a_list); };
    t["network.sigma"] = [](auto& c, const auto& e) { scalar_or_list(e, c.network.bank.sigma, c.sigma_list); };
    t["network.c_hat"] = [](auto& c, const auto& e) { scalar_or_list(e, c.network.bank.c_hat, c.c_hat_list); };
    t["network.factor_loading"] = [](auto& c, const auto& e) {
      scalar_or_list(e, c.network.bank.factor_loading, c.loading_list);
    };
    t["network.x0"] = [](auto& c, const auto& e) { scalar_or_list(e, c.network.x0, c.x0_list); };
    t["network.rho"] = [](auto& c, const auto& e) { c.network.rho = number(e); };
    t["network.D"] = [](auto& c, const auto& e) { c.network.D = number(e); };
    t["network.T"] = [](auto& c, const auto& e) { c.network.T = number(e); };
    t["network.steps"] = [](auto& c, const auto& e) { c.network.steps = count(e); };
    t["network.substeps"] = [](auto& c, const auto& e) { c.substeps = count(e); };
    t["network.param_cap"] = [](auto& c, const auto& e) { c.param_cap = number(e); };
    t["network.jump"] = [](auto& c, const auto& e) { c.network.jump = choice(e, kJumpKinds); };
    t["network.factor"] = [factor](auto& c, const auto& e) {
      if (boolean(e)) {
        factor(c);
      } else {
        c.network.factor.reset();
      }
    };
    t["network.factor_drift"] = [factor](auto& c, const auto& e) { factor(c).drift = choice(e, kDrifts); };
    t["network.factor_drift_params"] = [factor](auto& c, const auto& e) {
      const auto v = numbers(e);
      if (v.size() != 2) type_error(e, "[p1, p2]");
      factor(c).drift_p1 = v[0];
      factor(c).drift_p2 = v[1];
    };
    t["network.factor_vol"] = [factor](auto& c, const auto& e) { factor(c).vol = choice(e, kVols); };
    t["network.factor_vol_param"] = [factor](auto& c, const auto& e) { factor(c).vol_param = number(e); };
    t["network.factor_y0"] = [factor](auto& c, const auto& e) { factor(c).y0 = number(e); };

    t["hawkes.mu"] = [](auto& c, const auto& e) { c.network.mu = number(e); };
    t["hawkes.alpha"] = [](auto& c, const auto& e) { c.network.alpha = number(e); };
    t["hawkes.beta"] = [](auto& c, const auto& e) { c.network.beta = number(e); };
    t["hawkes.scaling"] = [](auto& c, const auto& e) { c.network.scaling = choice(e, kScalings); };
    t["hawkes.size_distribution"] = [](auto& c, const auto& e) { c.network.sizes.kind = choice(e, kSizeKinds); };
    t["hawkes.size_params"] = [](auto& c, const auto& e) {
      const auto v = numbers(e);
      if (v.size() != 2) type_error(e, "[p1, p2]");
      c.network.sizes.p1 = v[0];
      c.network.sizes.p2 = v[1];
    };
    t["hawkes.size_mirrored"] = [](auto& c, const auto& e) { c.network.sizes.mirrored = boolean(e); };

    t["limit.scheme"] = [](auto& c, const auto& e) { c.scheme = choice(e, kSchemes); };
    t["limit.paths"] = [](auto& c, const auto& e) { c.limit_paths = count(e); };
    t["limit.mu"] = [](auto& c, const auto& e) { c.limit_mu = number(e); };
    t["limit.alpha"] = [](auto& c, const auto& e) { c.limit_alpha = number(e); };
    t["limit.beta"] = [](auto& c, const auto& e) { c.limit_beta = number(e); };
    t["limit.a"] = [](auto& c, const auto& e) { c.limit_a = number(e); };
    t["limit.sigma"] = [](auto& c, const auto& e) { c.limit_sigma = number(e); };
    t["limit.c"] = [](auto& c, const auto& e) { c.limit_c = number(e); };
    t["limit.x"] = [](auto& c, const auto& e) { c.limit_x = number(e); };
    t["limit.mean_jump_size"] = [](auto& c, const auto& e) { c.limit_mean_jump_size = number(e); };
    t["limit.factor_loading"] = [](auto& c, const auto& e) { c.limit_factor_loading = number(e); };

    t["risk.runs"] = [](auto& c, const auto& e) { c.runs = count(e); };
    t["risk.x0_grid"] = [](auto& c, const auto& e) { c.x0_grid = numbers(e); };
    t["risk.tail"] = [](auto& c, const auto& e) { c.tail = choice(e, kTails); };
    t["risk.q_grid"] = [](auto& c, const auto& e) { c.q_grid = numbers(e); };
    t["risk.sample"] = [](auto& c, const auto& e) {
      c.sample_increments = choice(e, std::vector<std::pair<std::string, bool>>{{"increment", true}, {"level", false}});
    };
    t["risk.nodes"] = [](auto& c, const auto& e) {
      const auto v = counts(e);
      if (v.size() != 2) type_error(e, "[i, j]");
      c.node_i = v[0];
      c.node_j = v[1];
    };
    t["risk.M_list"] = [](auto& c, const auto& e) { c.M_list = counts(e); };

    t["calibration.input"] = [](auto& c, const auto& e) {
      c.calibration_input = text(e);
      if (!std::filesystem::exists(c.calibration_input)) {
        throw ConfigError(where(e) + ": calibration.input file '" + c.calibration_input + "' does not exist");
      }
    };
    t["calibration.initial"] = [](auto& c, const auto& e) { c.initial_guess = five(e); };
    t["calibration.lower"] = [](auto& c, const auto& e) { c.lower_bounds = five(e); };
    t["calibration.upper"] = [](auto& c, const auto& e) { c.upper_bounds = five(e); };
    t["calibration.max_evaluations"] = [](auto& c, const auto& e) { c.max_evaluations = count(e); };

    t["output.dir"] = [](auto& c, const auto& e) { c.out_dir = text(e); };
    t["output.plots"] = [](auto& c, const auto& e) { c.plots = boolean(e); };
    t["output.path_runs"] = [](auto& c, const auto& e) { c.path_runs = count(e); };
    return t;
  }();
  return table;
}

std::string array_text(std::span<const double> v) {
  std::string out = "[";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + format_number(v[k]);
  return out + "]";
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out + "\"";
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<TomlEntry> parse_toml(std::string_view text_view, const std::string& source) {
  std::vector<TomlEntry> entries;
  std::set<std::string> seen;
  std::string section;
  std::istringstream in{std::string(text_view)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string origin = source + ":" + std::to_string(line_no);
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(origin + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!valid_name(section)) throw ConfigError(origin + ": invalid section name '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(origin + ": expected key = value");
    TomlEntry e;
    e.section = section;
    e.key = trim(line.substr(0, eq));
    e.origin = origin;
    if (!valid_name(e.key)) throw ConfigError(origin + ": invalid key '" + e.key + "'");
    e.value = parse_value(trim(line.substr(eq + 1)), origin);
    if (!seen.insert(full_key(e)).second) throw ConfigError(origin + ": duplicate key '" + full_key(e) + "'");
    entries.push_back(std::move(e));
  }
  return entries;
}

TomlEntry parse_override(const std::string& assignment) {
  const std::string origin = "--set " + assignment;
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError(origin + ": expected section.key=value");
  const std::string path = trim(assignment.substr(0, eq));
  TomlEntry e;
  e.origin = origin;
  const auto dot = path.rfind('.');
  if (dot == std::string::npos) {
    e.key = path;
  } else {
    e.section = path.substr(0, dot);
    e.key = path.substr(dot + 1);
  }
  const std::string value = trim(assignment.substr(eq + 1));
  // Bare words are accepted as strings on the command line.
  const bool bare_word = !value.empty() && std::isalpha(static_cast<unsigned char>(value.front())) &&
                         value != "true" && value != "false" && value != "inf" && value != "nan";
  e.value = bare_word ? TomlValue{value} : parse_value(value, origin);
  return e;
}

void apply_entries(ExperimentConfig& config, const std::vector<TomlEntry>& entries) {
  const auto& table = setters();
  for (const auto& e : entries) {
    const auto it = table.find(full_key(e));
    if (it == table.end()) throw ConfigError(e.origin + ": unknown key '" + full_key(e) + "'");
    it->second(config, e);
  }
}

ExperimentConfig load_config(const std::string& file, const std::vector<std::string>& overrides,
                             ExperimentConfig base) {
  std::vector<TomlEntry> entries;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file '" + file + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    entries = parse_toml(buffer.str(), file);
  }
  for (const auto& o : overrides) entries.push_back(parse_override(o));

  // The preset is the lowest layer: apply it first, then everything else in order.
  const TomlEntry* preset = nullptr;
  for (const auto& e : entries) {
    if (full_key(e) == "network.preset") preset = &e;
  }
  if (preset) apply_entries(base, {*preset});
  std::vector<TomlEntry> rest;
  for (const auto& e : entries) {
    if (full_key(e) != "network.preset") rest.push_back(e);
  }
  apply_entries(base, rest);
  return base;
}

NetworkSpec ExperimentConfig::network_spec() const {
  NetworkSpec spec = network.build();
  spec.substeps = substeps;
  spec.param_cap = param_cap;
  auto apply = [&](const std::vector<double>& list, const char* name, auto&& assign) {
    if (list.empty()) return;
    if (list.size() != spec.M) {
      throw ConfigError(std::string("network.") + name + " has " + std::to_string(list.size()) +
                        " entries, expected M = " + std::to_string(spec.M));
    }
    for (std::size_t i = 0; i < spec.M; ++i) assign(i, list[i]);
  };
  apply(a_list, "a", [&](std::size_t i, double v) { spec.banks[i].a = v; });
  apply(sigma_list, "sigma", [&](std::size_t i, double v) { spec.banks[i].sigma = v; });
  apply(c_hat_list, "c_hat", [&](std::size_t i, double v) { spec.banks[i].c_hat = v; });
  apply(loading_list, "factor_loading", [&](std::size_t i, double v) { spec.banks[i].factor_loading = v; });
  apply(x0_list, "x0", [&](std::size_t i, double v) { spec.x0[i] = v; });
  return spec;
}

LimitParams ExperimentConfig::limit_params() const {
  LimitParams p = hawkesnet::limit_params(network);
  auto mean_or = [](const std::vector<double>& list, double fallback) {
    if (list.empty()) return fallback;
    double s = 0.0;
    for (double v : list) s += v;
    return s / static_cast<double>(list.size());
  };
  // Heterogeneous banks enter the limit through their cross-sectional means.
  p.a = mean_or(a_list, p.a);
  p.sigma = mean_or(sigma_list, p.sigma);
  p.c = mean_or(c_hat_list, p.c);
  p.factor_loading = mean_or(loading_list, p.factor_loading);
  p.x = mean_or(x0_list, p.x);
  if (limit_mu) p.mu = *limit_mu;
  if (limit_alpha) p.alpha = *limit_alpha;
  if (limit_beta) p.beta = *limit_beta;
  if (limit_a) p.a = *limit_a;
  if (limit_sigma) p.sigma = *limit_sigma;
  if (limit_c) p.c = *limit_c;
  if (limit_x) p.x = *limit_x;
  if (limit_mean_jump_size) p.mean_jump_size = *limit_mean_jump_size;
  if (limit_factor_loading) p.factor_loading = *limit_factor_loading;
  return p;
}

std::string network_to_toml(const HomogeneousNetwork& net) {
  std::ostringstream o;
  o << "[network]\n";
  o << "M = " << net.M << "\n";
  o << "a = " << format_number(net.bank.a) << "\n";
  o << "sigma = " << format_number(net.bank.sigma) << "\n";
  o << "c_hat = " << format_number(net.bank.c_hat) << "\n";
  o << "factor_loading = " << format_number(net.bank.factor_loading) << "\n";
  o << "x0 = " << format_number(net.x0) << "\n";
  o << "rho = " << format_number(net.rho) << "\n";
  o << "D = " << format_number(net.D) << "\n";
  o << "T = " << format_number(net.T) << "\n";
  o << "steps = " << net.steps << "\n";
  o << "jump = " << quoted(name_of(kJumpKinds, net.jump)) << "\n";
  o << "factor = " << (net.factor ? "true" : "false") << "\n";
  if (net.factor) {
    const auto& f = *net.factor;
    o << "factor_drift = " << quoted(name_of(kDrifts, f.drift)) << "\n";
    o << "factor_drift_params = [" << format_number(f.drift_p1) << ", " << format_number(f.drift_p2) << "]\n";
    o << "factor_vol = " << quoted(name_of(kVols, f.vol)) << "\n";
    o << "factor_vol_param = " << format_number(f.vol_param) << "\n";
    o << "factor_y0 = " << format_number(f.y0) << "\n";
  }
  o << "\n[hawkes]\n";
  o << "mu = " << format_number(net.mu) << "\n";
  o << "alpha = " << format_number(net.alpha) << "\n";
  o << "beta = " << format_number(net.beta) << "\n";
  o << "scaling = " << quoted(name_of(kScalings, net.scaling)) << "\n";
  o << "size_distribution = " << quoted(name_of(kSizeKinds, net.sizes.kind)) << "\n";
  o << "size_params = [" << format_number(net.sizes.p1) << ", " << format_number(net.sizes.p2) << "]\n";
  o << "size_mirrored = " << (net.sizes.mirrored ? "true" : "false") << "\n";
  return o.str();
}

std::string normalized_config(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "seed = " << c.seed << "\n\n";
  o << network_to_toml(c.network);
  o << "\n[network.extra]\n";
  o << "preset = " << quoted(c.preset) << "\n";
  o << "substeps = " << c.substeps << "\n";
  o << "param_cap = " << format_number(c.param_cap) << "\n";
  o << "a_list = " << array_text(c.a_list) << "\n";
  o << "sigma_list = " << array_text(c.sigma_list) << "\n";
  o << "c_hat_list = " << array_text(c.c_hat_list) << "\n";
  o << "loading_list = " << array_text(c.loading_list) << "\n";
  o << "x0_list = " << array_text(c.x0_list) << "\n";
  o << "\n[limit]\n";
  o << "scheme = " << quoted(name_of(kSchemes, c.scheme)) << "\n";
  o << "paths = " << c.limit_paths << "\n";
  auto opt = [&](const char* name, const std::optional<double>& v) {
    if (v) o << name << " = " << format_number(*v) << "\n";
  };
  opt("mu", c.limit_mu);
  opt("alpha", c.limit_alpha);
  opt("beta", c.limit_beta);
  opt("a", c.limit_a);
  opt("sigma", c.limit_sigma);
  opt("c", c.limit_c);
  opt("x", c.limit_x);
  opt("mean_jump_size", c.limit_mean_jump_size);
  opt("factor_loading", c.limit_factor_loading);
  o << "\n[risk]\n";
  o << "runs = " << c.runs << "\n";
  o << "x0_grid = " << array_text(c.x0_grid) << "\n";
  o << "tail = " << quoted(name_of(kTails, c.tail)) << "\n";
  o << "q_grid = " << array_text(c.q_grid) << "\n";
  o << "sample = " << quoted(c.sample_increments ? "increment" : "level") << "\n";
  o << "nodes = [" << c.node_i << ", " << c.node_j << "]\n";
  std::vector<double> ms(c.M_list.begin(), c.M_list.end());
  o << "M_list = " << array_text(ms) << "\n";
  o << "\n[calibration]\n";
  o << "input = " << quoted(c.calibration_input) << "\n";
  auto five_text = [&](const char* name, const std::optional<Q1Params>& p) {
    if (!p) return;
    const auto v = p->to_array();
    o << name << " = " << array_text(v) << "\n";
  };
  five_text("initial", c.initial_guess);
  five_text("lower", c.lower_bounds);
  five_text("upper", c.upper_bounds);
  o << "max_evaluations = " << c.max_evaluations << "\n";
  o << "\n[output]\n";
  o << "path_runs = " << c.path_runs << "\n";
  return o.str();
}

std::string fingerprint(const ExperimentConfig& config) {
  const std::string text = normalized_config(config);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hawkesnet::cli
