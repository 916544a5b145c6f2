// Command-line runner: simulate, verify, converge and growth experiments.
//
//   wavebound simulate --profile example1 --data derivative-velocity --t-end 50
//   wavebound verify   --config run.cfg --n-points 8001
//   wavebound converge --profile const:1 --data bump --t-end 3 --levels 3
//   wavebound growth   --profile const:1 --data bump-velocity --t-end 200

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wavebound/config.hpp"
#include "wavebound/errors.hpp"
#include "wavebound/experiment.hpp"

namespace {

// Exit codes: 0 every check passed, 1 some check failed, 2 bad input or
// runtime error.
constexpr int kFailed = 1;
constexpr int kError = 2;

struct Overrides {
  std::string config_path;
  std::map<std::string, std::string> values;
  bool archive = false;
};

void add_common_flags(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--config", o.config_path, "key = value configuration file");
  const auto bind = [&](const std::string& flag, const std::string& key, const std::string& help) {
    cmd.add_option_function<std::string>(
        flag, [&o, key](const std::string& v) { o.values[key] = v; }, help);
  };
  bind("--profile", "profile", "const:<v>, example1, example2a, example2b, example3");
  bind("--data", "data", "bump, bump-velocity, odd-velocity, derivative-velocity");
  bind("--scale", "scale", "dilation of the data profile");
  bind("--shift", "shift", "translation of the data profile");
  bind("--amplitude", "amplitude", "amplitude of the data profile");
  bind("--t-end", "t_end", "final time");
  bind("--n-points", "n_points", "odd number of grid nodes");
  bind("--cfl", "cfl", "Courant number a_max dt / h, at most 0.95");
  bind("--snapshots", "snapshots", "number of diagnostic sample intervals");
  bind("--epsilon", "epsilon", "relative tolerance of bound checks");
  bind("--out", "output_dir", "output directory");
  bind("--levels", "levels", "grid levels for converge");
  bind("--window-lo", "window_lo", "growth fit window start");
  bind("--window-hi", "window_hi", "growth fit window end");
  cmd.add_flag("--archive", o.archive, "write snapshots.txt with every sampled field");
}

wavebound::ExperimentConfig resolve(const Overrides& o) {
  wavebound::ExperimentConfig config;
  if (!o.config_path.empty()) config = wavebound::load_config(o.config_path);
  for (const auto& [k, v] : o.values) wavebound::apply_setting(config, k, v);
  if (o.archive) config.archive = true;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavebound: L2 bounds for 1-D waves with time-dependent speed"};
  app.require_subcommand(1);

  Overrides simulate_o, verify_o, converge_o, growth_o;
  auto* simulate = app.add_subcommand("simulate", "run and write series.csv + summary.json");
  auto* verify = app.add_subcommand("verify", "run the invariant suite; nonzero exit on failure");
  auto* converge = app.add_subcommand("converge", "observed order against d'Alembert");
  auto* growth = app.add_subcommand("growth", "growth fit and frequency-domain comparison");
  add_common_flags(*simulate, simulate_o);
  add_common_flags(*verify, verify_o);
  add_common_flags(*converge, converge_o);
  add_common_flags(*growth, growth_o);

  CLI11_PARSE(app, argc, argv);

  try {
    bool pass = true;
    if (simulate->parsed()) {
      const auto out = wavebound::simulate(resolve(simulate_o));
      std::cout << out.json << '\n';
      pass = out.pass;
    } else if (verify->parsed()) {
      const auto out = wavebound::verify(resolve(verify_o));
      std::cout << out.json << '\n';
      pass = out.pass;
    } else if (converge->parsed()) {
      const auto out = wavebound::converge(resolve(converge_o));
      std::cout << out.json << '\n';
      pass = out.pass;
    } else if (growth->parsed()) {
      const auto out = wavebound::growth(resolve(growth_o));
      std::cout << out.json << '\n';
      pass = out.pass;
    }
    return pass ? 0 : kFailed;
  } catch (const wavebound::ValidationError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
}
