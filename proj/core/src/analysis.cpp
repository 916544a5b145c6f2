#include "wavebound/analysis.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "wavebound/errors.hpp"
#include "wavebound/numerics.hpp"

namespace wavebound {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ec == std::errc{} ? ptr : buf.data());
}

double l2_norm_sq(std::span<const double> field, const GridSpec& grid) {
  if (field.size() != grid.n_points)
    throw ValidationError("field", "length does not match the grid");
  return numerics::trapezoid_sq(field, grid.h);
}

double energy(std::span<const double> u, std::span<const double> u_t, double a,
              const GridSpec& grid) {
  const auto u_x = numerics::centered_difference(u, grid.h);
  return 0.5 * (l2_norm_sq(u_t, grid) + a * a * l2_norm_sq(u_x, grid));
}

double energy_u(const WaveState& state, const CoefficientProfile& profile, const GridSpec& grid) {
  std::vector<double> u_t(state.u_curr.size());
  for (std::size_t j = 0; j < u_t.size(); ++j)
    u_t[j] = (state.u_curr[j] - state.u_prev[j]) / grid.dt;
  return energy(state.u_curr, u_t, profile.speed(state.t), grid);
}

DiagnosticRecord diagnose(double t, std::size_t step_index, std::span<const double> u,
                          std::span<const double> u_t, const SpeedSample& coefficient,
                          const GridSpec& grid) {
  const double h = grid.h;
  const double a = coefficient.a;
  DiagnosticRecord rec;
  rec.t = t;
  rec.step_index = step_index;
  rec.a_t = a;
  rec.a_prime_t = coefficient.a_prime;
  rec.l2_u_sq = l2_norm_sq(u, grid);
  rec.E_u = energy(u, u_t, a, grid);

  const auto v = numerics::cumulative_trapezoid(u, h);
  const auto v_t = numerics::cumulative_trapezoid(u_t, h);
  const auto v_x = numerics::centered_difference(v, h);
  rec.l2_vx_sq = l2_norm_sq(v_x, grid);
  rec.E_v = 0.5 * (l2_norm_sq(v_t, grid) + a * a * rec.l2_vx_sq);

  std::vector<double> gap(u.size(), 0.0);
  for (std::size_t j = 1; j + 1 < u.size(); ++j) gap[j] = v_x[j] - u[j];
  rec.reconstruction_error =
      std::sqrt(l2_norm_sq(gap, grid)) / std::max(1.0, std::sqrt(rec.l2_u_sq));
  return rec;
}

ResidualReport energy_identity_residual(const DiagnosticSeries& series,
                                        const CoefficientProfile& profile) {
  const auto& r = series.records;
  if (r.size() < 3) throw SeriesError("energy residual needs at least three records");
  ResidualReport out;
  out.midpoints.reserve(r.size() - 1);
  out.residuals.reserve(r.size() - 1);
  for (std::size_t k = 0; k + 1 < r.size(); ++k) {
    const double dt = r[k + 1].t - r[k].t;
    if (!(dt > 0.0)) {
      std::ostringstream msg;
      msg << "snapshot times not strictly increasing at t = " << r[k].t;
      throw SeriesError(msg.str());
    }
    const double tm = 0.5 * (r[k].t + r[k + 1].t);
    const auto c = profile.evaluate(tm);
    const double source = c.a * c.a_prime * 0.5 * (r[k].l2_vx_sq + r[k + 1].l2_vx_sq);
    const double residual = (r[k + 1].E_v - r[k].E_v) / dt - source;
    out.midpoints.push_back(tm);
    out.residuals.push_back(residual);
    out.max_abs = std::max(out.max_abs, std::abs(residual));
  }
  return out;
}

std::string_view to_string(Theorem theorem) {
  switch (theorem) {
    case Theorem::thm11: return "Thm1.1";
    case Theorem::cor11: return "Cor1.1";
    case Theorem::cor12: return "Cor1.2";
  }
  return "?";
}

std::vector<BoundReport> theorem_bound(const AssumptionFlags& flags, const MomentReport& report,
                                       const CoefficientProfile& profile, double epsilon) {
  if (!report.v1_in_L2) {
    std::ostringstream msg;
    msg << "zero-order moment of u1 is " << report.c0
        << "; v1 is not square integrable and no L2 bound applies";
    throw HypothesisViolation(msg.str());
  }
  std::vector<BoundReport> out;
  const auto make = [&](Theorem theorem, double value) {
    BoundReport b;
    b.theorem = theorem;
    b.bound_value = value;
    b.epsilon = epsilon;
    return b;
  };
  const double a0 = profile.a0();
  if (flags.a2_holds) out.push_back(make(Theorem::thm11, report.I0_sq / (a0 * a0)));
  if (flags.a3_holds) out.push_back(make(Theorem::cor11, report.I0_sq));
  if (flags.a4_holds) {
    auto b = make(Theorem::cor12, report.I0_sq / (flags.A0 * flags.A0) *
                                      std::exp(2.0 / flags.A0 * flags.tv_total));
    b.tail_estimate = flags.tv_tail;
    out.push_back(b);
  }
  if (out.empty())
    throw ValidationError("profile", "profile '" + profile.name() +
                                         "' satisfies none of the monotone or integrable cases");
  return out;
}

BoundReport verify_bound(const DiagnosticSeries& series, BoundReport skeleton) {
  if (series.records.empty()) throw SeriesError("empty diagnostic series");
  double sup = 0.0;
  for (const auto& r : series.records) sup = std::max(sup, r.l2_u_sq);
  skeleton.measured_sup = sup;
  skeleton.margin = skeleton.bound_value - sup;
  skeleton.pass = sup <= skeleton.bound_value * (1.0 + skeleton.epsilon);
  return skeleton;
}

std::vector<BoundReport> verify_bounds(const DiagnosticSeries& series,
                                       std::vector<BoundReport> skeletons) {
  for (auto& s : skeletons) s = verify_bound(series, s);
  return skeletons;
}

GrowthFit fit_growth(const DiagnosticSeries& series, double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo)) throw FitError("growth window must satisfy 0 < lo < hi");
  std::vector<double> log_t, log_norm, t, norm_sq;
  for (const auto& r : series.records) {
    if (r.t < lo || r.t > hi) continue;
    if (!(r.l2_u_sq > 0.0)) {
      std::ostringstream msg;
      msg << "non-positive norm at t = " << r.t;
      throw FitError(msg.str());
    }
    log_t.push_back(std::log(r.t));
    log_norm.push_back(0.5 * std::log(r.l2_u_sq));
    t.push_back(r.t);
    norm_sq.push_back(r.l2_u_sq);
  }
  if (t.size() < 10) {
    std::ostringstream msg;
    msg << "growth window [" << lo << ", " << hi << "] holds " << t.size()
        << " records; at least 10 are needed";
    throw FitError(msg.str());
  }
  const auto loglog = numerics::fit_line(log_t, log_norm);
  const auto linear = numerics::fit_line(t, norm_sq);
  GrowthFit fit;
  fit.exponent = loglog.slope;
  fit.amplitude = std::exp(loglog.intercept);
  fit.r_squared = loglog.r_squared;
  fit.sq_slope = linear.slope;
  fit.sq_intercept = linear.intercept;
  fit.count = t.size();
  fit.window_lo = lo;
  fit.window_hi = hi;
  return fit;
}

std::string_view to_string(Envelope envelope) {
  switch (envelope) {
    case Envelope::gronwall: return "gronwall";
    case Envelope::monotone: return "monotone";
    case Envelope::variation: return "variation";
  }
  return "?";
}

std::vector<EnvelopeReport> check_envelopes(const DiagnosticSeries& series,
                                            const AssumptionFlags& flags,
                                            const CoefficientProfile& profile, double epsilon) {
  if (series.records.empty()) throw SeriesError("empty diagnostic series");
  const auto& r = series.records;
  const double e0 = r.front().E_v;
  const double a0 = r.front().a_t;

  const auto scan = [&](Envelope kind, auto&& envelope_at) {
    EnvelopeReport rep;
    rep.kind = kind;
    rep.epsilon = epsilon;
    rep.pass = true;
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double limit = envelope_at(k);
      const double ratio = limit > 0.0 ? r[k].E_v / limit : (r[k].E_v > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
      if (ratio > rep.worst_ratio || k == 0) {
        rep.worst_ratio = ratio;
        rep.worst_time = r[k].t;
      }
      if (r[k].E_v > limit * (1.0 + epsilon)) rep.pass = false;
    }
    return rep;
  };

  std::vector<EnvelopeReport> out;
  if (flags.a2_holds)
    out.push_back(scan(Envelope::gronwall, [&](std::size_t k) {
      const double q = r[k].a_t / a0;
      return e0 * q * q;
    }));
  if (flags.a3_holds) out.push_back(scan(Envelope::monotone, [&](std::size_t) { return e0; }));
  if (flags.a4_holds && !profile.is_constant()) {
    std::vector<double> tv(r.size(), 0.0);
    for (std::size_t k = 1; k < r.size(); ++k) {
      const double piece = numerics::integrate(
          [&profile](double s) { return std::abs(profile.rate(s)); }, r[k - 1].t, r[k].t,
          1e-12, 4);
      tv[k] = tv[k - 1] + piece;
    }
    out.push_back(scan(Envelope::variation,
                       [&](std::size_t k) { return e0 * std::exp(2.0 / flags.A0 * tv[k]); }));
  }
  return out;
}

double max_reconstruction_error(const DiagnosticSeries& series) {
  double worst = 0.0;
  for (const auto& r : series.records) worst = std::max(worst, r.reconstruction_error);
  return worst;
}

void write_series_csv(std::ostream& out, const DiagnosticSeries& series,
                      std::span<const BoundReport> bounds) {
  std::array<std::optional<double>, 3> columns;
  for (const auto& b : bounds) columns[static_cast<std::size_t>(b.theorem)] = b.bound_value;

  out << "t,l2_u_sq,E_u,E_v,l2_vx_sq,a,a_prime,bound_thm11,bound_cor11,bound_cor12\n";
  for (const auto& r : series.records) {
    out << format_double(r.t) << ',' << format_double(r.l2_u_sq) << ',' << format_double(r.E_u)
        << ',' << format_double(r.E_v) << ',' << format_double(r.l2_vx_sq) << ','
        << format_double(r.a_t) << ',' << format_double(r.a_prime_t);
    for (const auto& c : columns) {
      out << ',';
      if (c) out << format_double(*c);
    }
    out << '\n';
  }
}

std::string bound_report_json(const BoundReport& report) {
  nlohmann::json j;
  j["theorem"] = std::string(to_string(report.theorem));
  j["bound_value"] = report.bound_value;
  j["measured_sup"] = report.measured_sup;
  j["margin"] = report.margin;
  j["pass"] = report.pass;
  j["epsilon"] = report.epsilon;
  if (report.tail_estimate) j["tail_estimate"] = *report.tail_estimate;
  return j.dump();
}

}  // namespace wavebound
