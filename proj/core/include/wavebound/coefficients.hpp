#pragma once

// Time-dependent wave-speed profiles a(t) and the scalar constants the
// L2 bounds are built from (sup, inf, log ratio, total variation).

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace wavebound {

struct SpeedSample {
  double a = 0.0;
  double a_prime = 0.0;
};

/// Analytic facts a profile may supply. `tail` maps T to an upper bound
/// of the integral of |a'| over [T, inf).
struct ProfileHints {
  std::optional<double> sup;
  std::optional<double> inf;
  std::function<double(double)> tail;
  bool constant = false;
};

/// Immutable wave-speed profile. Construction probes a(t) on [0, 100] and
/// rejects profiles that are not strictly positive there.
class CoefficientProfile {
 public:
  using Function = std::function<double(double)>;

  using Hints = ProfileHints;

  CoefficientProfile(std::string name, Function a, Function a_prime, Hints hints = {});

  const std::string& name() const noexcept { return name_; }

  /// (a(t), a'(t)). Throws ValidationError for t < 0 and ProfileError for
  /// non-finite values.
  SpeedSample evaluate(double t) const;
  double speed(double t) const { return evaluate(t).a; }
  double rate(double t) const { return evaluate(t).a_prime; }

  double a0() const noexcept { return a0_; }
  const std::optional<double>& sup_hint() const noexcept { return hints_.sup; }
  const std::optional<double>& inf_hint() const noexcept { return hints_.inf; }
  /// Upper bound of the tail of the integral of |a'| past T, when known.
  std::optional<double> tail_bound(double T) const;
  bool is_constant() const noexcept { return hints_.constant; }

 private:
  std::string name_;
  Function a_;
  Function a_prime_;
  Hints hints_;
  double a0_ = 0.0;
};

namespace profiles {

CoefficientProfile constant(double value);
/// a(t) = 1 + exp(-1/t) for t > 0, a(0) = 1, a'(0) = 0.
CoefficientProfile example1();
/// a(t) = 1 + exp(-t).
CoefficientProfile example2a();
/// a(t) = (2 + t) / (1 + t).
CoefficientProfile example2b();
/// a(t) = 2 + sin(t) / (1 + t)^2.
CoefficientProfile example3();

/// Accepts "const:<value>", "example1", "example2a", "example2b", "example3".
CoefficientProfile by_name(std::string_view name);

}  // namespace profiles

struct AssumptionFlags {
  bool a1_holds = false;  // a > 0 with finite supremum
  bool a2_holds = false;  // a' >= 0
  bool a3_holds = false;  // a' <= 0 and inf a > 0
  bool a4_holds = false;  // inf a > 0 and a' integrable
  double a_m = 0.0;
  double A0 = 0.0;
  double tv_total = 0.0;  // integral of |a'| over [0, horizon]
  std::optional<double> tv_tail;  // bound of the remainder past the horizon
  double horizon = 0.0;
};

inline constexpr std::size_t kDefaultClassifySamples = 4096;

/// Samples a and a' on [0, horizon]; sup/inf combine the samples with the
/// profile's hints. a' counts as both signs when
/// |a'| <= 1e-13 * max(1, a).
AssumptionFlags classify(const CoefficientProfile& profile, double horizon,
                         std::size_t samples = kDefaultClassifySamples);

/// log(a(t) / a(0)). Cross-checked against the quadrature of a'/a; a
/// disagreement above 1e-8 raises AccuracyError.
double w_log_ratio(const CoefficientProfile& profile, double t);

/// Integral of a'/a over [0, t] by adaptive Simpson.
double w_log_ratio_quadrature(const CoefficientProfile& profile, double t);

inline constexpr double kQuadratureTolerance = 1e-10;

/// Integral of |a'| over [0, T].
double total_variation(const CoefficientProfile& profile, double T,
                       double abs_tol = kQuadratureTolerance);

/// Sampled maximum of a on [0, T], combined with the sup hint. Used for the
/// CFL restriction.
double max_speed(const CoefficientProfile& profile, double T,
                 std::size_t samples = kDefaultClassifySamples);

}  // namespace wavebound
