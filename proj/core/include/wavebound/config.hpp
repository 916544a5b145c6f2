#pragma once

// Experiment configuration: a flat "key = value" file plus overrides.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wavebound {

struct ExperimentConfig {
  std::string profile = "const:1";
  std::string data = "bump";
  double scale = 1.0;
  double shift = 0.0;
  double amplitude = 1.0;
  double t_end = 10.0;
  std::size_t n_points = 4001;
  double cfl = 0.9;
  std::size_t snapshots = 200;
  double epsilon = 0.02;
  std::string output_dir = "wavebound-out";
  std::size_t levels = 3;
  bool archive = false;
  std::optional<double> window_lo;  // growth fit window, default t_end / 4
  std::optional<double> window_hi;  // default t_end
};

/// Sets one key from its text form. Throws ValidationError naming the key
/// for unknown keys and unparsable values.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Parses "key = value" lines; '#' starts a comment; blank lines are skipped.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

/// Range checks, and that the profile and data names resolve.
void validate(const ExperimentConfig& config);

/// Every key with a value that parses back to the same setting.
std::vector<std::pair<std::string, std::string>> to_key_values(const ExperimentConfig& config);

}  // namespace wavebound
