#pragma once

// Three-level explicit scheme for u_tt = a(t)^2 u_xx on a truncated line.
//
//   u^{n+1}_j = 2u^n_j - u^{n-1}_j + (a(t_n) dt / h)^2 (u^n_{j+1} - 2u^n_j + u^n_{j-1})
//
// with zero Dirichlet values at both edges. The domain is sized so that the
// physical cone of the data never reaches the edges before t_end.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "wavebound/analysis.hpp"
#include "wavebound/coefficients.hpp"
#include "wavebound/grid.hpp"
#include "wavebound/initial_data.hpp"
#include "wavebound/wave_state.hpp"

namespace wavebound {

struct SolverLimits {
  double cfl_max = 0.95;
  std::size_t max_points = std::size_t{1} << 25;
};

inline constexpr double kDefaultCfl = 0.9;
inline constexpr std::size_t kDefaultSnapshots = 200;

/// Chooses half_width >= L + a_max t_end + 4h and dt <= cfl h / a_max with
/// t_end an exact multiple of dt, and the step count a multiple of
/// `step_multiple`. a_max is the sampled supremum of a on [0, t_end]
/// combined with the profile's hint.
GridSpec init_grid(const InitialData& data, const CoefficientProfile& profile, double t_end,
                   double cfl, std::size_t n_points, const SolverLimits& limits = {},
                   std::size_t step_multiple = 1);

/// Level 1 by the Taylor start u1 = u0 + dt u1 + dt^2/2 a(0)^2 D2 u0.
WaveState first_step(const InitialData& data, const CoefficientProfile& profile,
                     const GridSpec& grid);

/// Writes the next level into `next`; returns the sum of |next| so callers
/// can detect overflow cheaply.
double leapfrog_update(std::span<const double> prev, std::span<const double> curr,
                       std::span<double> next, double courant_sq);

/// Advances `state` by one step in place. `scratch` receives the level that
/// was dropped (the old u_prev). Throws BlowUpError on a non-finite field.
void advance(WaveState& state, const CoefficientProfile& profile, const GridSpec& grid,
             std::vector<double>& scratch);

/// Value-returning form of `advance`.
WaveState step(WaveState state, const CoefficientProfile& profile, const GridSpec& grid);

/// Recomputes v_curr as the cumulative trapezoid of u_curr.
void refresh_antiderivative(WaveState& state, const GridSpec& grid);

/// Resolved inputs of a single experiment.
struct RunSetup {
  CoefficientProfile profile;
  InitialData data;
  double t_end = 0.0;
  std::size_t n_points = 4001;
  double cfl = kDefaultCfl;
  std::size_t snapshots = kDefaultSnapshots;
  /// Also evolve v by the same scheme from (v0, v1) and compare it with the
  /// cumulative trapezoid of u at every snapshot.
  bool evolve_antiderivative = false;
  /// Snapshot archive sink: "t=<value>" then the node values, left to right.
  std::ostream* archive = nullptr;
  SolverLimits limits{};
};

struct RunResult {
  GridSpec grid;
  DiagnosticSeries series;
  /// Largest |v_evolved - v_reconstructed| / max(1, max|v|) over snapshots.
  std::optional<double> antiderivative_gap;
};

/// Step indices at which diagnostics are taken: round(k n_steps / snapshots)
/// for k = 0..snapshots, deduplicated. `run` makes n_steps a multiple of
/// snapshots, so the sample times are exactly evenly spaced.
std::vector<std::size_t> snapshot_steps(std::size_t n_steps, std::size_t snapshots);

RunResult run(const RunSetup& setup);

}  // namespace wavebound
