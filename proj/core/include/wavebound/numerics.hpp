#pragma once

// Grid-function quadrature and small numerical helpers shared by the modules.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace wavebound::numerics {

/// Composite trapezoid of uniformly spaced samples.
double trapezoid(std::span<const double> values, double h);

/// Composite trapezoid of values[j]^2.
double trapezoid_sq(std::span<const double> values, double h);

/// out[j] = trapezoid of values[0..j]; out[0] = 0.
void cumulative_trapezoid(std::span<const double> values, double h, std::span<double> out);
std::vector<double> cumulative_trapezoid(std::span<const double> values, double h);

/// Second-order centered difference at interior nodes, zero at both ends.
void centered_difference(std::span<const double> values, double h, std::span<double> out);
std::vector<double> centered_difference(std::span<const double> values, double h);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

/// Adaptive Simpson on [a, b], split first into `panels` equal pieces so that
/// oscillatory integrands are not under-sampled by the initial estimate.
/// The absolute tolerance is shared across panels.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, std::size_t panels = 1, int max_depth = 48);

/// As above, but throws AccuracyError when any panel fails to converge.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 std::size_t panels = 1);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = slope*x + intercept. Needs at least two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace wavebound::numerics
