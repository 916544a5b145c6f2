#pragma once

#include <cstddef>
#include <vector>

namespace wavebound {

/// Two consecutive time levels of the discrete field plus, when refreshed,
/// the antiderivative of the current level.
struct WaveState {
  double t = 0.0;
  std::vector<double> u_prev;  // level step_index - 1
  std::vector<double> u_curr;  // level step_index
  std::vector<double> v_curr;  // cumulative trapezoid of u_curr; may be stale
  std::size_t step_index = 0;
};

}  // namespace wavebound
