#pragma once

// The four runner commands. Each returns its JSON report as text together
// with the overall verdict; `pass` is true exactly when every "pass" field
// in the JSON is true.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wavebound/analysis.hpp"
#include "wavebound/config.hpp"
#include "wavebound/oracles.hpp"
#include "wavebound/solver.hpp"

namespace wavebound {

RunSetup make_setup(const ExperimentConfig& config);

/// Classification horizon used for a run ending at t_end.
double classification_horizon(double t_end);

struct SimulationOutcome {
  RunResult run;
  AssumptionFlags flags;
  MomentReport moment;
  std::vector<BoundReport> bounds;  // empty when v1 is not square integrable
  std::optional<GrowthFit> growth;  // fitted when v1 is not square integrable
  std::string csv;
  std::string json;
  bool pass = true;
};

/// Runs the solver, evaluates the applicable bounds and writes series.csv and
/// summary.json into config.output_dir when `write_files` is set.
SimulationOutcome simulate(const ExperimentConfig& config, bool write_files = true);

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerifyOutcome {
  SimulationOutcome simulation;
  std::vector<CheckResult> checks;
  std::string json;
  bool pass = false;
};

inline constexpr double kReconstructionThreshold = 5e-3;
inline constexpr double kResidualThreshold = 5e-2;
inline constexpr double kEvolutionGapThreshold = 1e-9;

/// Bound checks, reconstruction identity, energy residual, evolved-versus-
/// reconstructed antiderivative, and the energy envelopes of the assumptions.
VerifyOutcome verify(const ExperimentConfig& config, bool write_files = true);

struct ConvergenceLevel {
  std::size_t n_points = 0;
  double h = 0.0;
  double error = 0.0;
};

struct ConvergeOutcome {
  std::vector<ConvergenceLevel> levels;
  double order = 0.0;
  std::string json;
  bool pass = false;
};

inline constexpr double kOrderTarget = 2.0;
inline constexpr double kOrderTolerance = 0.2;

/// L2 error against the d'Alembert solution at t_end on config.levels grids,
/// n, 2n-1, 4n-3, ... Requires a constant profile.
ConvergeOutcome converge(const ExperimentConfig& config, bool write_files = true);

struct GrowthOutcome {
  SimulationOutcome simulation;
  GrowthFit fit;
  std::optional<OracleResult> oracle;
  std::optional<double> relative_difference;
  std::string json;
  bool pass = true;
};

inline constexpr double kGrowthExponent = 0.5;
inline constexpr double kGrowthExponentTolerance = 0.05;
inline constexpr double kBoundedExponentCeiling = 0.05;
inline constexpr double kOracleSlopeTolerance = 0.10;

/// Simulation plus growth fit; for constant profiles also the frequency
/// oracle's slope of ||u||^2.
GrowthOutcome growth(const ExperimentConfig& config, bool write_files = true);

/// Reads the "config" object of a summary.json back into a configuration.
ExperimentConfig config_from_summary(std::string_view summary_json);

}  // namespace wavebound
