#pragma once

// Norms, energies, the antiderivative energy identity, the closed-form L2
// bounds and growth fits over a diagnostic time series.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wavebound/coefficients.hpp"
#include "wavebound/grid.hpp"
#include "wavebound/initial_data.hpp"
#include "wavebound/wave_state.hpp"

namespace wavebound {

struct DiagnosticRecord {
  double t = 0.0;
  double l2_u_sq = 0.0;
  double E_u = 0.0;
  double E_v = 0.0;
  double l2_vx_sq = 0.0;
  double a_t = 0.0;
  double a_prime_t = 0.0;
  /// ||D v - u|| / max(1, ||u||) over interior nodes, D the centered difference.
  double reconstruction_error = 0.0;
  std::size_t step_index = 0;
};

struct DiagnosticSeries {
  std::vector<DiagnosticRecord> records;
  double h = 0.0;
  double dt = 0.0;
};

inline constexpr double kDefaultEpsilonBound = 0.02;

/// Composite trapezoid of field^2.
double l2_norm_sq(std::span<const double> field, const GridSpec& grid);

/// 1/2 (||u_t||^2 + a^2 ||u_x||^2) with u_x by centered differences.
double energy(std::span<const double> u, std::span<const double> u_t, double a,
              const GridSpec& grid);

/// E_u of a two-level state with u_t = (u_curr - u_prev) / dt.
double energy_u(const WaveState& state, const CoefficientProfile& profile, const GridSpec& grid);

/// Full diagnostic record at one time level given u and u_t there.
DiagnosticRecord diagnose(double t, std::size_t step_index, std::span<const double> u,
                          std::span<const double> u_t, const SpeedSample& coefficient,
                          const GridSpec& grid);

struct ResidualReport {
  std::vector<double> midpoints;
  std::vector<double> residuals;
  double max_abs = 0.0;
};

/// r_k = (E_v(t_{k+1}) - E_v(t_k)) / (t_{k+1} - t_k)
///       - a(tm) a'(tm) (||v_x(t_k)||^2 + ||v_x(t_{k+1})||^2) / 2,  tm the midpoint.
ResidualReport energy_identity_residual(const DiagnosticSeries& series,
                                        const CoefficientProfile& profile);

enum class Theorem { thm11, cor11, cor12 };
std::string_view to_string(Theorem theorem);

struct BoundReport {
  Theorem theorem = Theorem::thm11;
  double bound_value = 0.0;  // bound on the squared norm
  double measured_sup = 0.0;
  double margin = 0.0;
  bool pass = false;
  double epsilon = kDefaultEpsilonBound;
  /// Cor1.2 only: bound on the variation of a beyond the classification horizon.
  std::optional<double> tail_estimate;
};

/// Every bound whose assumption holds:
///   Thm1.1  I0^2 / a(0)^2                      (a' >= 0)
///   Cor1.1  I0^2                               (a' <= 0, inf a > 0)
///   Cor1.2  I0^2 / A0^2 exp(2 tv / A0)         (inf a > 0, a' integrable)
/// Throws HypothesisViolation when v1 is not square integrable.
std::vector<BoundReport> theorem_bound(const AssumptionFlags& flags, const MomentReport& report,
                                       const CoefficientProfile& profile,
                                       double epsilon = kDefaultEpsilonBound);

/// Fills measured_sup, margin and pass (measured_sup <= bound (1 + epsilon)).
BoundReport verify_bound(const DiagnosticSeries& series, BoundReport skeleton);
std::vector<BoundReport> verify_bounds(const DiagnosticSeries& series,
                                       std::vector<BoundReport> skeletons);

struct GrowthFit {
  double exponent = 0.0;   // slope of log ||u|| against log t
  double amplitude = 0.0;  // exp(intercept)
  double r_squared = 0.0;
  double sq_slope = 0.0;   // slope of ||u||^2 against t
  double sq_intercept = 0.0;
  std::size_t count = 0;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

/// Least squares over records with t in [lo, hi]; needs ten of them.
GrowthFit fit_growth(const DiagnosticSeries& series, double lo, double hi);

/// Energy envelope of the antiderivative field implied by each assumption.
enum class Envelope { gronwall, monotone, variation };
std::string_view to_string(Envelope envelope);

struct EnvelopeReport {
  Envelope kind = Envelope::gronwall;
  double worst_ratio = 0.0;  // max_t E_v(t) / envelope(t)
  double worst_time = 0.0;
  bool pass = false;
  double epsilon = kDefaultEpsilonBound;
};

///   gronwall   E_v(t) <= E_v(0) (a(t)/a(0))^2          when a' >= 0
///   monotone   E_v(t) <= E_v(0)                        when a' <= 0
///   variation  E_v(t) <= E_v(0) exp(2/A0 int_0^t |a'|) when A0 > 0
std::vector<EnvelopeReport> check_envelopes(const DiagnosticSeries& series,
                                            const AssumptionFlags& flags,
                                            const CoefficientProfile& profile,
                                            double epsilon = kDefaultEpsilonBound);

double max_reconstruction_error(const DiagnosticSeries& series);

/// Columns: t,l2_u_sq,E_u,E_v,l2_vx_sq,a,a_prime,bound_thm11,bound_cor11,bound_cor12.
/// Values use shortest round-trip formatting; absent bounds are empty.
void write_series_csv(std::ostream& out, const DiagnosticSeries& series,
                      std::span<const BoundReport> bounds);

/// {"theorem", "bound_value", "measured_sup", "margin", "pass", "epsilon"}.
std::string bound_report_json(const BoundReport& report);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace wavebound
