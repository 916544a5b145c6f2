#pragma once

// Ground truth that does not go through the time stepper: closed-form
// constant-speed solutions, high-order quadrature for pinned constants,
// observed convergence orders and a frequency-domain norm for a = const.

#include <array>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wavebound/grid.hpp"
#include "wavebound/initial_data.hpp"

namespace wavebound {

struct OracleResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::string method;
};

namespace oracles {

/// Adaptive 61-point Gauss-Kronrod.
OracleResult integrate(const std::function<double(double)>& f, double a, double b);

OracleResult bump_integral();           // int psi
OracleResult bump_l2_sq();              // ||psi||^2
OracleResult bump_derivative_l2_sq();   // ||psi'||^2

/// Exact antiderivatives of the data from -inf to x.
double velocity_antiderivative(const InitialData& data, double x);
double position_antiderivative(const InitialData& data, double x);

/// I0^2 = ||v1||^2 + a0^2 ||u0||^2 by quadrature of the exact v1. Returns +inf
/// when the zero-order moment does not vanish to quadrature accuracy.
OracleResult bound_constant_sq(const InitialData& data, double a0);

/// d'Alembert solution for the constant speed c:
///   (u0(x - ct) + u0(x + ct)) / 2 + (V1(x + ct) - V1(x - ct)) / (2c).
double dalembert(const InitialData& data, double t, double x, double speed = 1.0);
std::vector<double> dalembert_field(const InitialData& data, const GridSpec& grid, double t,
                                    double speed = 1.0);

/// Least-squares slope of log(error) against log(h). Needs at least two
/// entries with h strictly decreasing and positive errors.
double convergence_order(std::span<const std::pair<double, double>> errors_at_h);

/// ||u(t)||^2 for a = speed from Plancherel:
///   (1/pi) int_0^Xi |u0^(xi) cos(c t xi) + u1^(xi) sin(c t xi) / (c xi)|^2 dxi.
OracleResult fourier_norm_sq(const InitialData& data, double t, double speed = 1.0);

inline constexpr std::array<double, 3> kGrowthTimes{100.0, 200.0, 400.0};

/// Linear-in-t trend of fourier_norm_sq over `times`. The error estimate is
/// the spread between consecutive secant slopes plus the quadrature error.
OracleResult fourier_growth_slope(const InitialData& data, double speed = 1.0,
                                  std::span<const double> times = kGrowthTimes);

}  // namespace oracles
}  // namespace wavebound
