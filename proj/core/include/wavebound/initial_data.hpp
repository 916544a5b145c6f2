#pragma once

// Compactly supported initial data (u0, u1), the antiderivative v1 of the
// velocity, its zero-order moment and the bound constant I0.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "wavebound/grid.hpp"

namespace wavebound {

/// Smooth bump exp(-1/(1 - y^2)) on |y| < 1, exactly zero elsewhere.
double bump(double y);
double bump_derivative(double y);

enum class DataKind {
  bump,                 // u0 = psi, u1 = 0
  bump_velocity,        // u0 = 0, u1 = psi
  odd_velocity,         // u0 = 0, u1 = y psi(y)
  derivative_velocity,  // u0 = 0, u1 = d/dx psi
  custom,
};

/// y = (x - shift) / scale; every built-in field is amplitude * f(y).
struct DataParams {
  double scale = 1.0;
  double shift = 0.0;
  double amplitude = 1.0;
};

DataKind parse_data_kind(std::string_view name);
std::string_view to_string(DataKind kind);

class InitialData {
 public:
  using Sampler = std::function<double(double)>;

  /// Built-in family member.
  InitialData(DataKind kind, DataParams params = {});

  /// Arbitrary samplers that vanish outside [support_lo, support_hi].
  InitialData(Sampler u0, Sampler u1, double support_lo, double support_hi,
              std::string label = "custom");

  double u0(double x) const;
  double u1(double x) const;

  DataKind kind() const noexcept { return kind_; }
  const DataParams& params() const noexcept { return params_; }
  const std::string& label() const noexcept { return label_; }

  double support_lo() const noexcept { return lo_; }
  double support_hi() const noexcept { return hi_; }
  /// Smallest L with supp u0, supp u1 inside [-L, L].
  double support_radius() const noexcept;

  std::vector<double> sample_u0(const GridSpec& grid) const;
  std::vector<double> sample_u1(const GridSpec& grid) const;

  /// Same data with u1 multiplied by `factor`.
  InitialData with_velocity_scaled(double factor) const;

 private:
  DataKind kind_;
  DataParams params_;
  std::string label_;
  Sampler u0_;
  Sampler u1_;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

struct MomentReport {
  double c0 = 0.0;
  bool v1_in_L2 = false;
  double v1_l2_sq = 0.0;  // +inf when v1 is not square integrable
  double u0_l2_sq = 0.0;
  double I0_sq = 0.0;     // +inf when v1 is not square integrable
  double a0 = 0.0;
  double moment_tolerance = 0.0;
};

/// Cumulative trapezoid of u1 from the left grid edge.
std::vector<double> antiderivative(const InitialData& data, const GridSpec& grid);

/// Trapezoid value of the integral of u1.
double moment(const InitialData& data, const GridSpec& grid);

/// |c0| <= 1e-10 * (1 + max|u1| * L) declares v1 square integrable.
double moment_tolerance(const InitialData& data, const GridSpec& grid);

MomentReport bound_constant(const InitialData& data, double a0, const GridSpec& grid);

}  // namespace wavebound
