#pragma once

#include <cstddef>
#include <vector>

namespace wavebound {

/// Uniform symmetric grid on [-half_width, half_width] with an odd node
/// count, so x = 0 is the middle node, and the time step paired with it.
struct GridSpec {
  double half_width = 0.0;
  std::size_t n_points = 0;
  double h = 0.0;
  double dt = 0.0;
  double cfl = 0.0;          // a_max * dt / h as realised
  double a_max = 0.0;        // speed bound used for the CFL restriction
  double t_end = 0.0;
  std::size_t n_steps = 0;   // t_end == n_steps * dt

  std::size_t middle() const noexcept { return (n_points - 1) / 2; }

  /// Node coordinate; exact mirror symmetry x(mid + k) == -x(mid - k).
  double x(std::size_t j) const noexcept {
    const auto mid = static_cast<long long>(middle());
    return static_cast<double>(static_cast<long long>(j) - mid) * h;
  }

  std::vector<double> nodes() const;
};

/// Grid with only the spatial part filled in; used by initial-data routines
/// and tests that do not time step.
GridSpec spatial_grid(double half_width, std::size_t n_points);

}  // namespace wavebound
