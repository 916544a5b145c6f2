#include "wavebound/coefficients.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "wavebound/errors.hpp"
#include "wavebound/numerics.hpp"

namespace wavebound {

namespace {

constexpr double kProbeHorizon = 100.0;
constexpr std::size_t kProbeSamples = 1001;
constexpr double kZeroRateTolerance = 1e-13;

std::size_t panels_for(double length) {
  return static_cast<std::size_t>(std::clamp(std::ceil(length), 1.0, 4096.0));
}

}  // namespace

CoefficientProfile::CoefficientProfile(std::string name, Function a, Function a_prime,
                                       Hints hints)
    : name_(std::move(name)), a_(std::move(a)), a_prime_(std::move(a_prime)),
      hints_(std::move(hints)) {
  if (!a_ || !a_prime_) throw ValidationError("profile", "a and a' must both be provided");
  for (std::size_t i = 0; i < kProbeSamples; ++i) {
    const double t = kProbeHorizon * static_cast<double>(i) / (kProbeSamples - 1);
    const auto s = evaluate(t);
    if (!(s.a > 0.0)) {
      std::ostringstream msg;
      msg << "profile '" << name_ << "' is not positive at t = " << t << " (a = " << s.a << ")";
      throw ProfileError(msg.str(), t);
    }
  }
  a0_ = evaluate(0.0).a;
}

SpeedSample CoefficientProfile::evaluate(double t) const {
  if (!(t >= 0.0)) throw ValidationError("t", "profile evaluated at negative time");
  SpeedSample s{a_(t), a_prime_(t)};
  if (!std::isfinite(s.a) || !std::isfinite(s.a_prime)) {
    std::ostringstream msg;
    msg << "profile '" << name_ << "' is not finite at t = " << t;
    throw ProfileError(msg.str(), t);
  }
  return s;
}

std::optional<double> CoefficientProfile::tail_bound(double T) const {
  if (hints_.tail) return hints_.tail(T);
  if (hints_.constant) return 0.0;
  return std::nullopt;
}

namespace profiles {

CoefficientProfile constant(double value) {
  std::ostringstream name;
  name << "const:" << value;
  CoefficientProfile::Hints hints;
  hints.sup = value;
  hints.inf = value;
  hints.constant = true;
  return CoefficientProfile(
      name.str(), [value](double) { return value; }, [](double) { return 0.0; }, hints);
}

CoefficientProfile example1() {
  CoefficientProfile::Hints hints;
  hints.sup = 2.0;
  hints.inf = 1.0;
  // Monotone increasing towards 2: the remaining variation is 2 - a(T).
  hints.tail = [](double T) { return T > 0.0 ? -std::expm1(-1.0 / T) : 1.0; };
  return CoefficientProfile(
      "example1",
      [](double t) { return t > 0.0 ? 1.0 + std::exp(-1.0 / t) : 1.0; },
      [](double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }, hints);
}

CoefficientProfile example2a() {
  CoefficientProfile::Hints hints;
  hints.sup = 2.0;
  hints.inf = 1.0;
  hints.tail = [](double T) { return std::exp(-T); };
  return CoefficientProfile(
      "example2a", [](double t) { return 1.0 + std::exp(-t); },
      [](double t) { return -std::exp(-t); }, hints);
}

CoefficientProfile example2b() {
  CoefficientProfile::Hints hints;
  hints.sup = 2.0;
  hints.inf = 1.0;
  hints.tail = [](double T) { return 1.0 / (1.0 + T); };
  return CoefficientProfile(
      "example2b", [](double t) { return (2.0 + t) / (1.0 + t); },
      [](double t) { return -1.0 / ((1.0 + t) * (1.0 + t)); }, hints);
}

CoefficientProfile example3() {
  CoefficientProfile::Hints hints;
  // |a'| <= 1/(1+t)^2 + 2/(1+t)^3, integrated from T to infinity.
  hints.tail = [](double T) {
    const double s = 1.0 + T;
    return 1.0 / s + 1.0 / (s * s);
  };
  return CoefficientProfile(
      "example3",
      [](double t) {
        const double s = 1.0 + t;
        return 2.0 + std::sin(t) / (s * s);
      },
      [](double t) {
        const double s = 1.0 + t;
        return std::cos(t) / (s * s) - 2.0 * std::sin(t) / (s * s * s);
      },
      hints);
}

CoefficientProfile by_name(std::string_view name) {
  if (name == "example1") return example1();
  if (name == "example2a") return example2a();
  if (name == "example2b") return example2b();
  if (name == "example3") return example3();
  constexpr std::string_view prefix = "const:";
  if (name.starts_with(prefix)) {
    const auto text = name.substr(prefix.size());
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
      throw ValidationError("profile", "cannot parse constant in '" + std::string(name) + "'");
    if (!(value > 0.0) || !std::isfinite(value))
      throw ProfileError("constant profile must be positive and finite", 0.0);
    return constant(value);
  }
  throw ValidationError("profile", "unknown profile '" + std::string(name) + "'");
}

}  // namespace profiles

AssumptionFlags classify(const CoefficientProfile& profile, double horizon, std::size_t samples) {
  if (!(horizon > 0.0)) throw ValidationError("horizon", "must be positive");
  if (samples < 16) throw ValidationError("samples", "at least 16 samples are required");

  AssumptionFlags flags;
  flags.horizon = horizon;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  bool nonneg = true;
  bool nonpos = true;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = horizon * static_cast<double>(i) / static_cast<double>(samples - 1);
    const auto s = profile.evaluate(t);
    if (!(s.a > 0.0)) {
      std::ostringstream msg;
      msg << "positivity violated: a(" << t << ") = " << s.a;
      throw ProfileError(msg.str(), t);
    }
    lo = std::min(lo, s.a);
    hi = std::max(hi, s.a);
    const double zero_band = kZeroRateTolerance * std::max(1.0, s.a);
    if (s.a_prime < -zero_band) nonneg = false;
    if (s.a_prime > zero_band) nonpos = false;
  }
  if (profile.sup_hint()) hi = std::max(hi, *profile.sup_hint());
  if (profile.inf_hint()) lo = std::min(lo, *profile.inf_hint());

  flags.a_m = hi;
  flags.A0 = lo;
  flags.tv_total = profile.is_constant() ? 0.0 : total_variation(profile, horizon);
  flags.tv_tail = profile.tail_bound(horizon);

  flags.a1_holds = lo > 0.0 && std::isfinite(hi);
  flags.a2_holds = flags.a1_holds && nonneg;
  flags.a3_holds = flags.a1_holds && nonpos && lo > 0.0;
  flags.a4_holds = flags.a1_holds && lo > 0.0 && std::isfinite(flags.tv_total);
  return flags;
}

double w_log_ratio_quadrature(const CoefficientProfile& profile, double t) {
  if (!(t >= 0.0)) throw ValidationError("t", "must be non-negative");
  if (t == 0.0 || profile.is_constant()) return 0.0;
  return numerics::integrate(
      [&profile](double s) {
        const auto v = profile.evaluate(s);
        return v.a_prime / v.a;
      },
      0.0, t, 1e-11, panels_for(t));
}

double w_log_ratio(const CoefficientProfile& profile, double t) {
  if (!(t >= 0.0)) throw ValidationError("t", "must be non-negative");
  const double closed = std::log(profile.speed(t) / profile.a0());
  const double quad = w_log_ratio_quadrature(profile, t);
  const double gap = std::abs(closed - quad);
  if (gap > 1e-8 * std::max(1.0, std::abs(closed))) {
    std::ostringstream msg;
    msg << "log ratio of '" << profile.name() << "' disagrees with the quadrature of a'/a at t = "
        << t << " by " << gap;
    throw AccuracyError(msg.str(), gap);
  }
  return closed;
}

double total_variation(const CoefficientProfile& profile, double T, double abs_tol) {
  if (!(T > 0.0)) throw ValidationError("T", "must be positive");
  if (profile.is_constant()) return 0.0;
  const auto r = numerics::adaptive_simpson(
      [&profile](double s) { return std::abs(profile.rate(s)); }, 0.0, T, abs_tol,
      panels_for(4.0 * T));
  if (!r.converged) {
    std::ostringstream msg;
    msg << "total variation of '" << profile.name() << "' on [0, " << T
        << "] did not converge (estimate " << r.error_estimate << ")";
    throw AccuracyError(msg.str(), r.error_estimate);
  }
  return r.value;
}

double max_speed(const CoefficientProfile& profile, double T, std::size_t samples) {
  double hi = profile.a0();
  if (T > 0.0 && samples >= 2) {
    for (std::size_t i = 0; i < samples; ++i)
      hi = std::max(hi, profile.speed(T * static_cast<double>(i) / static_cast<double>(samples - 1)));
  }
  if (profile.sup_hint()) hi = std::max(hi, *profile.sup_hint());
  return hi;
}

}  // namespace wavebound
