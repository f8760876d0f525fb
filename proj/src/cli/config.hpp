#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hawkesnet/calibration.hpp"
#include "hawkesnet/limit.hpp"
#include "hawkesnet/network.hpp"
#include "hawkesnet/risk.hpp"

namespace hawkesnet::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Values of the TOML subset understood by the config reader: numbers,
// booleans, basic strings, and flat arrays of numbers or strings.
using TomlArray = std::vector<std::variant<double, std::string>>;
using TomlValue = std::variant<double, bool, std::string, TomlArray>;

struct TomlEntry {
  std::string section;  // "" for top-level keys
  std::string key;
  TomlValue value;
  std::string origin;  // "file:line" or "--set"
};

std::vector<TomlEntry> parse_toml(std::string_view text, const std::string& source);

// Parses one `section.key=value` override.
TomlEntry parse_override(const std::string& assignment);

struct ExperimentConfig {
  std::uint64_t seed = 20190313;
  unsigned workers = 0;

  // [network] + [hawkes]
  std::string preset;
  HomogeneousNetwork network;
  // Per-bank overrides (length M) of the homogeneous values.
  std::vector<double> a_list, sigma_list, c_hat_list, loading_list, x0_list;
  std::size_t substeps = 1;
  double param_cap = 1e6;

  // [limit]
  LambdaScheme scheme = LambdaScheme::exact;
  std::size_t limit_paths = 100000;
  std::optional<double> limit_mu, limit_alpha, limit_beta, limit_a, limit_sigma, limit_c, limit_x,
      limit_mean_jump_size, limit_factor_loading;

  // [risk]
  std::size_t runs = 1000;
  std::vector<double> x0_grid;
  Tail tail = Tail::lower;
  std::vector<double> q_grid;
  bool sample_increments = true;
  std::size_t node_i = 0, node_j = 1;
  std::vector<std::size_t> M_list = {50, 100, 200, 400};

  // [calibration]
  std::string calibration_input;
  std::optional<Q1Params> initial_guess;
  std::optional<Q1Params> lower_bounds, upper_bounds;
  std::size_t max_evaluations = 10000;

  // [output]
  std::string out_dir = "out";
  bool plots = true;
  std::size_t path_runs = 1;

  NetworkSpec network_spec() const;
  LimitParams limit_params() const;
};

// Applies entries (in order) onto `config`. Unknown keys, wrong types and
// missing referenced files raise ConfigError naming the origin.
void apply_entries(ExperimentConfig& config, const std::vector<TomlEntry>& entries);

// preset < file < overrides. `file` may be empty.
ExperimentConfig load_config(const std::string& file, const std::vector<std::string>& overrides,
                             ExperimentConfig base = {});

// Canonical text of every modelling field (workers and output location excluded).
std::string normalized_config(const ExperimentConfig& config);

// 16 hex digits of FNV-1a 64 over normalized_config (which includes the seed).
std::string fingerprint(const ExperimentConfig& config);

// [network] and [hawkes] sections describing a homogeneous network.
std::string network_to_toml(const HomogeneousNetwork& net);

std::string format_number(double v);

}  // namespace hawkesnet::cli
