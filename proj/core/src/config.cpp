#include "wavebound/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "wavebound/analysis.hpp"
#include "wavebound/coefficients.hpp"
#include "wavebound/errors.hpp"
#include "wavebound/initial_data.hpp"

namespace wavebound {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw ValidationError(std::string(key), "expected a number, got '" + std::string(text) + "'");
  return value;
}

std::size_t parse_count(std::string_view key, std::string_view text) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw ValidationError(std::string(key),
                          "expected a non-negative integer, got '" + std::string(text) + "'");
  return value;
}

bool parse_flag(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ValidationError(std::string(key), "expected true or false, got '" + std::string(text) + "'");
}

void check(bool ok, const char* key, const std::string& what) {
  if (!ok) throw ValidationError(key, what);
}

}  // namespace

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  if (key == "profile") c.profile = std::string(value);
  else if (key == "data") c.data = std::string(value);
  else if (key == "scale") c.scale = parse_real(key, value);
  else if (key == "shift") c.shift = parse_real(key, value);
  else if (key == "amplitude") c.amplitude = parse_real(key, value);
  else if (key == "t_end") c.t_end = parse_real(key, value);
  else if (key == "n_points") c.n_points = parse_count(key, value);
  else if (key == "cfl") c.cfl = parse_real(key, value);
  else if (key == "snapshots") c.snapshots = parse_count(key, value);
  else if (key == "epsilon") c.epsilon = parse_real(key, value);
  else if (key == "output_dir") c.output_dir = std::string(value);
  else if (key == "levels") c.levels = parse_count(key, value);
  else if (key == "archive") c.archive = parse_flag(key, value);
  else if (key == "window_lo") c.window_lo = parse_real(key, value);
  else if (key == "window_hi") c.window_hi = parse_real(key, value);
  else throw ValidationError(std::string(key), "unknown configuration key");
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig config) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw ValidationError("line " + std::to_string(number), "expected 'key = value'");
    apply_setting(config, trim(view.substr(0, eq)), view.substr(eq + 1));
  }
  return config;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open configuration file '" + path + "'");
  return parse_config(in, std::move(base));
}

void validate(const ExperimentConfig& c) {
  check(std::isfinite(c.t_end) && c.t_end >= 0.0 && c.t_end <= 1e4, "t_end", "must lie in [0, 1e4]");
  check(c.n_points % 2 == 1 && c.n_points >= 17, "n_points", "must be odd and at least 17");
  check(c.cfl > 0.0 && c.cfl <= 0.95, "cfl", "must lie in (0, 0.95]");
  check(c.snapshots >= 1 && c.snapshots <= 1000000, "snapshots", "must lie in [1, 1e6]");
  check(std::isfinite(c.epsilon) && c.epsilon >= 0.0 && c.epsilon <= 1.0, "epsilon",
        "must lie in [0, 1]");
  check(std::isfinite(c.scale) && c.scale > 0.0, "scale", "must be positive");
  check(std::isfinite(c.shift), "shift", "must be finite");
  check(std::isfinite(c.amplitude), "amplitude", "must be finite");
  check(c.levels >= 1 && c.levels <= 8, "levels", "must lie in [1, 8]");
  check(!c.output_dir.empty(), "output_dir", "must not be empty");
  if (c.window_lo) check(std::isfinite(*c.window_lo) && *c.window_lo > 0.0, "window_lo", "must be positive");
  if (c.window_hi) check(std::isfinite(*c.window_hi) && *c.window_hi > 0.0, "window_hi", "must be positive");
  (void)profiles::by_name(c.profile);
  (void)parse_data_kind(c.data);
}

std::vector<std::pair<std::string, std::string>> to_key_values(const ExperimentConfig& c) {
  std::vector<std::pair<std::string, std::string>> kv{
      {"profile", c.profile},
      {"data", c.data},
      {"scale", format_double(c.scale)},
      {"shift", format_double(c.shift)},
      {"amplitude", format_double(c.amplitude)},
      {"t_end", format_double(c.t_end)},
      {"n_points", std::to_string(c.n_points)},
      {"cfl", format_double(c.cfl)},
      {"snapshots", std::to_string(c.snapshots)},
      {"epsilon", format_double(c.epsilon)},
      {"output_dir", c.output_dir},
      {"levels", std::to_string(c.levels)},
      {"archive", c.archive ? "true" : "false"},
  };
  if (c.window_lo) kv.emplace_back("window_lo", format_double(*c.window_lo));
  if (c.window_hi) kv.emplace_back("window_hi", format_double(*c.window_hi));
  return kv;
}

}  // namespace wavebound
