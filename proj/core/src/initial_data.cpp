#include "wavebound/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wavebound/errors.hpp"
#include "wavebound/numerics.hpp"

namespace wavebound {

std::vector<double> GridSpec::nodes() const {
  std::vector<double> xs(n_points);
  for (std::size_t j = 0; j < n_points; ++j) xs[j] = x(j);
  return xs;
}

GridSpec spatial_grid(double half_width, std::size_t n_points) {
  if (n_points < 3 || n_points % 2 == 0)
    throw ValidationError("n_points", "must be odd and at least 3");
  if (!(half_width > 0.0)) throw ValidationError("half_width", "must be positive");
  GridSpec grid;
  grid.half_width = half_width;
  grid.n_points = n_points;
  grid.h = 2.0 * half_width / static_cast<double>(n_points - 1);
  return grid;
}

double bump(double y) {
  if (!(std::abs(y) < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - y * y));
}

double bump_derivative(double y) {
  if (!(std::abs(y) < 1.0)) return 0.0;
  const double q = 1.0 - y * y;
  return -2.0 * y / (q * q) * std::exp(-1.0 / q);
}

DataKind parse_data_kind(std::string_view name) {
  if (name == "bump") return DataKind::bump;
  if (name == "bump-velocity") return DataKind::bump_velocity;
  if (name == "odd-velocity") return DataKind::odd_velocity;
  if (name == "derivative-velocity") return DataKind::derivative_velocity;
  throw ValidationError("data", "unknown data '" + std::string(name) + "'");
}

std::string_view to_string(DataKind kind) {
  switch (kind) {
    case DataKind::bump: return "bump";
    case DataKind::bump_velocity: return "bump-velocity";
    case DataKind::odd_velocity: return "odd-velocity";
    case DataKind::derivative_velocity: return "derivative-velocity";
    case DataKind::custom: return "custom";
  }
  return "custom";
}

InitialData::InitialData(DataKind kind, DataParams p) : kind_(kind), params_(p) {
  if (kind == DataKind::custom)
    throw ValidationError("data", "custom data needs explicit samplers");
  if (!(p.scale > 0.0) || !std::isfinite(p.scale))
    throw ValidationError("scale", "must be positive and finite");
  if (!std::isfinite(p.shift)) throw ValidationError("shift", "must be finite");
  if (!std::isfinite(p.amplitude)) throw ValidationError("amplitude", "must be finite");

  label_ = std::string(to_string(kind));
  lo_ = p.shift - p.scale;
  hi_ = p.shift + p.scale;
  const auto y = [p](double x) { return (x - p.shift) / p.scale; };
  const auto zero = [](double) { return 0.0; };
  switch (kind) {
    case DataKind::bump:
      u0_ = [=](double x) { return p.amplitude * bump(y(x)); };
      u1_ = zero;
      break;
    case DataKind::bump_velocity:
      u0_ = zero;
      u1_ = [=](double x) { return p.amplitude * bump(y(x)); };
      break;
    case DataKind::odd_velocity:
      u0_ = zero;
      u1_ = [=](double x) {
        const double s = y(x);
        return p.amplitude * s * bump(s);
      };
      break;
    case DataKind::derivative_velocity:
      u0_ = zero;
      u1_ = [=](double x) { return p.amplitude * bump_derivative(y(x)) / p.scale; };
      break;
    case DataKind::custom:
      break;
  }
}

InitialData::InitialData(Sampler u0, Sampler u1, double support_lo, double support_hi,
                         std::string label)
    : kind_(DataKind::custom), label_(std::move(label)), u0_(std::move(u0)), u1_(std::move(u1)),
      lo_(support_lo), hi_(support_hi) {
  if (!u0_ || !u1_) throw ValidationError("data", "samplers must be provided");
  if (!(support_lo <= support_hi)) throw ValidationError("support", "empty support interval");
}

double InitialData::u0(double x) const { return (x < lo_ || x > hi_) ? 0.0 : u0_(x); }
double InitialData::u1(double x) const { return (x < lo_ || x > hi_) ? 0.0 : u1_(x); }

double InitialData::support_radius() const noexcept {
  return std::max(std::abs(lo_), std::abs(hi_));
}

std::vector<double> InitialData::sample_u0(const GridSpec& grid) const {
  std::vector<double> out(grid.n_points);
  for (std::size_t j = 0; j < grid.n_points; ++j) out[j] = u0(grid.x(j));
  return out;
}

std::vector<double> InitialData::sample_u1(const GridSpec& grid) const {
  std::vector<double> out(grid.n_points);
  for (std::size_t j = 0; j < grid.n_points; ++j) out[j] = u1(grid.x(j));
  return out;
}

InitialData InitialData::with_velocity_scaled(double factor) const {
  switch (kind_) {
    case DataKind::bump:
      return *this;
    case DataKind::custom: {
      auto u1 = u1_;
      return InitialData(u0_, [u1, factor](double x) { return factor * u1(x); }, lo_, hi_, label_);
    }
    default: {
      auto p = params_;
      p.amplitude *= factor;
      return InitialData(kind_, p);
    }
  }
}

namespace {

void require_coverage(const InitialData& data, const GridSpec& grid) {
  if (grid.n_points < 3 || !(grid.h > 0.0))
    throw ValidationError("grid", "grid is not initialised");
  if (data.support_lo() < -grid.half_width || data.support_hi() > grid.half_width) {
    std::ostringstream msg;
    msg << "grid [-" << grid.half_width << ", " << grid.half_width
        << "] does not cover the data support [" << data.support_lo() << ", "
        << data.support_hi() << "]";
    throw DomainCoverageError(msg.str());
  }
}

}  // namespace

std::vector<double> antiderivative(const InitialData& data, const GridSpec& grid) {
  require_coverage(data, grid);
  return numerics::cumulative_trapezoid(data.sample_u1(grid), grid.h);
}

double moment(const InitialData& data, const GridSpec& grid) {
  require_coverage(data, grid);
  return numerics::trapezoid(data.sample_u1(grid), grid.h);
}

double moment_tolerance(const InitialData& data, const GridSpec& grid) {
  require_coverage(data, grid);
  double peak = 0.0;
  for (double v : data.sample_u1(grid)) peak = std::max(peak, std::abs(v));
  return 1e-10 * (1.0 + peak * data.support_radius());
}

MomentReport bound_constant(const InitialData& data, double a0, const GridSpec& grid) {
  require_coverage(data, grid);
  const auto u1 = data.sample_u1(grid);
  const auto v1 = numerics::cumulative_trapezoid(u1, grid.h);

  MomentReport report;
  report.a0 = a0;
  report.c0 = v1.back();
  report.moment_tolerance = moment_tolerance(data, grid);
  report.v1_in_L2 = std::abs(report.c0) <= report.moment_tolerance;
  report.u0_l2_sq = numerics::trapezoid_sq(data.sample_u0(grid), grid.h);
  if (report.v1_in_L2) {
    report.v1_l2_sq = numerics::trapezoid_sq(v1, grid.h);
    report.I0_sq = report.v1_l2_sq + a0 * a0 * report.u0_l2_sq;
  } else {
    report.v1_l2_sq = std::numeric_limits<double>::infinity();
    report.I0_sq = std::numeric_limits<double>::infinity();
  }
  return report;
}

}  // namespace wavebound
