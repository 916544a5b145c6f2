#include "wavebound/solver.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "wavebound/errors.hpp"
#include "wavebound/numerics.hpp"

namespace wavebound {

namespace {

constexpr std::size_t kEdgeCells = 4;

double courant_sq(const CoefficientProfile& profile, const GridSpec& grid, double t) {
  const double r = profile.speed(t) * grid.dt / grid.h;
  return r * r;
}

void second_difference(std::span<const double> u, std::span<double> out) {
  const std::size_t n = u.size();
  out[0] = 0.0;
  out[n - 1] = 0.0;
  for (std::size_t j = 1; j + 1 < n; ++j) out[j] = u[j + 1] - 2.0 * u[j] + u[j - 1];
}

void write_archive(std::ostream& out, double t, std::span<const double> u) {
  out << "t=" << format_double(t) << '\n';
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (j) out << ' ';
    out << format_double(u[j]);
  }
  out << '\n';
}

// Antiderivative field evolved by the same scheme. Its right edge carries the
// spatially constant value int u(t, .), so the edge update uses a zero second
// difference instead of a Dirichlet value.
struct AntiderivativeTrack {
  std::vector<double> prev, curr, next;

  void advance(double r2) {
    leapfrog_update(prev, curr, next, r2);
    const std::size_t n = curr.size();
    next[n - 1] = 2.0 * curr[n - 1] - prev[n - 1];
    std::swap(prev, curr);
    std::swap(curr, next);
  }
};

}  // namespace

GridSpec init_grid(const InitialData& data, const CoefficientProfile& profile, double t_end,
                   double cfl, std::size_t n_points, const SolverLimits& limits,
                   std::size_t step_multiple) {
  if (!(cfl > 0.0) || !(cfl <= limits.cfl_max)) {
    std::ostringstream msg;
    msg << "cfl = " << cfl << " outside (0, " << limits.cfl_max << "]";
    throw ValidationError("cfl", msg.str());
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    throw ValidationError("t_end", "must be finite and non-negative");
  if (n_points > limits.max_points) {
    std::ostringstream msg;
    msg << "n_points = " << n_points << " exceeds the budget of " << limits.max_points;
    throw CapacityError(msg.str());
  }
  if (n_points % 2 == 0 || n_points <= 4 * kEdgeCells + 1)
    throw ValidationError("n_points", "must be odd and larger than " +
                                          std::to_string(4 * kEdgeCells + 1));

  GridSpec grid;
  grid.n_points = n_points;
  grid.t_end = t_end;
  grid.a_max = max_speed(profile, t_end);

  // half_width = reach + kEdgeCells h with h = 2 half_width / (n - 1).
  double reach = data.support_radius() + grid.a_max * t_end;
  if (!(reach > 0.0)) reach = 1.0;
  const double cells = static_cast<double>(n_points - 1);
  grid.half_width = reach / (1.0 - 2.0 * kEdgeCells / cells);
  grid.h = 2.0 * grid.half_width / cells;

  const double dt_max = cfl * grid.h / grid.a_max;
  if (t_end > 0.0) {
    grid.n_steps = static_cast<std::size_t>(std::ceil(t_end / dt_max - 1e-12));
    step_multiple = std::max<std::size_t>(step_multiple, 1);
    grid.n_steps = std::max<std::size_t>(grid.n_steps, 1);
    grid.n_steps = (grid.n_steps + step_multiple - 1) / step_multiple * step_multiple;
    grid.dt = t_end / static_cast<double>(grid.n_steps);
  } else {
    grid.n_steps = 0;
    grid.dt = dt_max;
  }
  grid.cfl = grid.a_max * grid.dt / grid.h;
  return grid;
}

WaveState first_step(const InitialData& data, const CoefficientProfile& profile,
                     const GridSpec& grid) {
  WaveState state;
  state.u_prev = data.sample_u0(grid);
  const auto u1 = data.sample_u1(grid);
  std::vector<double> d2(grid.n_points);
  second_difference(state.u_prev, d2);

  const double r2 = courant_sq(profile, grid, 0.0);
  state.u_curr.resize(grid.n_points);
  for (std::size_t j = 0; j < grid.n_points; ++j)
    state.u_curr[j] = state.u_prev[j] + grid.dt * u1[j] + 0.5 * r2 * d2[j];
  state.u_curr.front() = 0.0;
  state.u_curr.back() = 0.0;
  state.t = grid.dt;
  state.step_index = 1;
  return state;
}

double leapfrog_update(std::span<const double> prev, std::span<const double> curr,
                       std::span<double> next, double courant_sq) {
  const std::size_t n = curr.size();
  next[0] = 0.0;
  next[n - 1] = 0.0;
  double magnitude = 0.0;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double value =
        2.0 * curr[j] - prev[j] + courant_sq * (curr[j + 1] - 2.0 * curr[j] + curr[j - 1]);
    next[j] = value;
    magnitude += std::abs(value);
  }
  return magnitude;
}

void advance(WaveState& state, const CoefficientProfile& profile, const GridSpec& grid,
             std::vector<double>& scratch) {
  scratch.resize(state.u_curr.size());
  const double magnitude =
      leapfrog_update(state.u_prev, state.u_curr, scratch, courant_sq(profile, grid, state.t));
  if (!std::isfinite(magnitude)) {
    std::ostringstream msg;
    msg << "non-finite field at step " << state.step_index + 1 << " (t = " << state.t + grid.dt
        << ", cfl = " << grid.cfl << ")";
    throw BlowUpError(msg.str(), state.step_index + 1, state.t + grid.dt);
  }
  // prev <- curr, curr <- next, scratch <- old prev.
  std::swap(state.u_prev, state.u_curr);
  std::swap(state.u_curr, scratch);
  ++state.step_index;
  state.t = static_cast<double>(state.step_index) * grid.dt;
}

WaveState step(WaveState state, const CoefficientProfile& profile, const GridSpec& grid) {
  std::vector<double> scratch;
  advance(state, profile, grid, scratch);
  return state;
}

void refresh_antiderivative(WaveState& state, const GridSpec& grid) {
  state.v_curr.resize(state.u_curr.size());
  numerics::cumulative_trapezoid(state.u_curr, grid.h, state.v_curr);
}

std::vector<std::size_t> snapshot_steps(std::size_t n_steps, std::size_t snapshots) {
  std::vector<std::size_t> steps{0};
  if (n_steps == 0 || snapshots == 0) return steps;
  for (std::size_t k = 1; k <= snapshots; ++k) {
    const auto s = static_cast<std::size_t>(
        std::llround(static_cast<double>(k) * static_cast<double>(n_steps) /
                     static_cast<double>(snapshots)));
    if (s > steps.back()) steps.push_back(s);
  }
  if (steps.back() != n_steps) steps.push_back(n_steps);
  return steps;
}

RunResult run(const RunSetup& setup) {
  if (setup.snapshots == 0) throw ValidationError("snapshots", "must be at least 1");
  RunResult result;
  const GridSpec grid =
      init_grid(setup.data, setup.profile, setup.t_end, setup.cfl, setup.n_points, setup.limits,
                setup.snapshots);
  result.grid = grid;
  result.series.h = grid.h;
  result.series.dt = grid.dt;

  const auto& profile = setup.profile;
  const auto u0 = setup.data.sample_u0(grid);
  const auto u1 = setup.data.sample_u1(grid);
  auto& records = result.series.records;

  std::optional<AntiderivativeTrack> track;
  double gap = 0.0;
  std::vector<double> v_rebuilt(grid.n_points);
  const auto compare_tracks = [&](std::span<const double> u, std::span<const double> v) {
    numerics::cumulative_trapezoid(u, grid.h, v_rebuilt);
    double diff = 0.0, scale = 1.0;
    for (std::size_t j = 0; j < grid.n_points; ++j) {
      diff = std::max(diff, std::abs(v[j] - v_rebuilt[j]));
      scale = std::max(scale, std::abs(v[j]));
    }
    gap = std::max(gap, diff / scale);
  };

  records.push_back(diagnose(0.0, 0, u0, u1, profile.evaluate(0.0), grid));
  if (setup.archive) write_archive(*setup.archive, 0.0, u0);
  if (setup.evolve_antiderivative) {
    track.emplace();
    track->prev = numerics::cumulative_trapezoid(u0, grid.h);
    compare_tracks(u0, track->prev);
  }
  if (grid.n_steps == 0) {
    if (track) result.antiderivative_gap = gap;
    return result;
  }

  WaveState state = first_step(setup.data, profile, grid);
  std::vector<double> scratch(grid.n_points);
  std::vector<double> u_t(grid.n_points);

  if (track) {
    // Taylor start for v; D2 commutes with the cumulative trapezoid, so this
    // equals the cumulative trapezoid of the u start up to rounding.
    const auto v1 = numerics::cumulative_trapezoid(u1, grid.h);
    std::vector<double> d2(grid.n_points);
    second_difference(track->prev, d2);
    d2.back() = 0.0;
    const double r2 = courant_sq(profile, grid, 0.0);
    track->curr.resize(grid.n_points);
    track->next.resize(grid.n_points);
    for (std::size_t j = 0; j < grid.n_points; ++j)
      track->curr[j] = track->prev[j] + grid.dt * v1[j] + 0.5 * r2 * d2[j];
    track->curr.front() = 0.0;
  }

  const auto steps = snapshot_steps(grid.n_steps, setup.snapshots);
  try {
    for (std::size_t k = 1; k < steps.size(); ++k) {
      const std::size_t target = steps[k];
      while (state.step_index < target) {
        if (track) track->advance(courant_sq(profile, grid, state.t));
        advance(state, profile, grid, scratch);
      }
      // Take one more step so the snapshot level has both neighbours:
      // scratch = level target-1, u_prev = target, u_curr = target+1.
      const double t = state.t;
      if (track) compare_tracks(state.u_curr, track->curr);
      advance(state, profile, grid, scratch);
      const double inv = 0.5 / grid.dt;
      for (std::size_t j = 0; j < grid.n_points; ++j) u_t[j] = (state.u_curr[j] - scratch[j]) * inv;
      records.push_back(diagnose(t, target, state.u_prev, u_t, profile.evaluate(t), grid));
      if (setup.archive) write_archive(*setup.archive, t, state.u_prev);
      if (track) track->advance(courant_sq(profile, grid, t));
    }
  } catch (const BlowUpError&) {
    throw;
  } catch (const ProfileError& e) {
    std::ostringstream msg;
    msg << e.what() << " (while stepping at t = " << state.t << ")";
    throw ProfileError(msg.str(), e.time());
  }
  if (track) result.antiderivative_gap = gap;
  return result;
}

}  // namespace wavebound
