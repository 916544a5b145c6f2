#include "wavebound/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wavebound/errors.hpp"

namespace wavebound::oracles {

namespace {

using boost::math::quadrature::gauss_kronrod;
using Complex = std::complex<double>;

constexpr double kRelTol = 1e-13;

double gk(const std::function<double(double)>& f, double a, double b, double* err = nullptr) {
  if (a == b) {
    if (err) *err = 0.0;
    return 0.0;
  }
  double e = 0.0;
  const double v = gauss_kronrod<double, 61>::integrate(f, a, b, 20, kRelTol, &e);
  if (err) *err = e;
  return v;
}

// Integral of the unit-scale velocity profile f over [-1, y].
double unit_velocity_antiderivative(DataKind kind, double y) {
  const double top = std::min(y, 1.0);
  if (top <= -1.0) return 0.0;
  switch (kind) {
    case DataKind::bump_velocity:
      return gk([](double z) { return bump(z); }, -1.0, top);
    case DataKind::odd_velocity:
      return gk([](double z) { return z * bump(z); }, -1.0, top);
    default:
      return 0.0;
  }
}

}  // namespace

OracleResult integrate(const std::function<double(double)>& f, double a, double b) {
  OracleResult r;
  r.value = gk(f, a, b, &r.error_estimate);
  r.method = "gauss-kronrod-61";
  if (!std::isfinite(r.value)) throw AccuracyError("oracle quadrature is not finite", r.error_estimate);
  return r;
}

OracleResult bump_integral() {
  return integrate([](double y) { return bump(y); }, -1.0, 1.0);
}

OracleResult bump_l2_sq() {
  return integrate([](double y) { return bump(y) * bump(y); }, -1.0, 1.0);
}

OracleResult bump_derivative_l2_sq() {
  return integrate([](double y) { return bump_derivative(y) * bump_derivative(y); }, -1.0, 1.0);
}

double velocity_antiderivative(const InitialData& data, double x) {
  const auto& p = data.params();
  const double y = (x - p.shift) / p.scale;
  switch (data.kind()) {
    case DataKind::bump:
      return 0.0;
    case DataKind::derivative_velocity:
      return p.amplitude * bump(y);
    case DataKind::bump_velocity:
    case DataKind::odd_velocity:
      return p.amplitude * p.scale * unit_velocity_antiderivative(data.kind(), y);
    case DataKind::custom:
      break;
  }
  const double top = std::min(x, data.support_hi());
  if (top <= data.support_lo()) return 0.0;
  return gk([&data](double s) { return data.u1(s); }, data.support_lo(), top);
}

double position_antiderivative(const InitialData& data, double x) {
  const double top = std::min(x, data.support_hi());
  if (top <= data.support_lo()) return 0.0;
  if (data.kind() == DataKind::bump) {
    const auto& p = data.params();
    return p.amplitude * p.scale * unit_velocity_antiderivative(DataKind::bump_velocity,
                                                                (x - p.shift) / p.scale);
  }
  if (data.kind() != DataKind::custom) return 0.0;
  return gk([&data](double s) { return data.u0(s); }, data.support_lo(), top);
}

OracleResult bound_constant_sq(const InitialData& data, double a0) {
  const double lo = data.support_lo();
  const double hi = data.support_hi();
  OracleResult out;
  out.method = "gauss-kronrod-61 (nested for v1)";

  double peak = 0.0;
  for (int i = 0; i <= 256; ++i) peak = std::max(peak, std::abs(data.u1(lo + (hi - lo) * i / 256.0)));
  const double c0 = velocity_antiderivative(data, hi);
  if (std::abs(c0) > 1e-10 * (1.0 + peak * data.support_radius())) {
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  double e_u0 = 0.0, e_v1 = 0.0;
  const double u0_sq = gk([&data](double x) { return data.u0(x) * data.u0(x); }, lo, hi, &e_u0);
  const double v1_sq = gk(
      [&data](double x) {
        const double v = velocity_antiderivative(data, x);
        return v * v;
      },
      lo, hi, &e_v1);
  out.value = v1_sq + a0 * a0 * u0_sq;
  out.error_estimate = e_v1 + a0 * a0 * e_u0;
  return out;
}

double dalembert(const InitialData& data, double t, double x, double speed) {
  const double ct = speed * t;
  const double even = 0.5 * (data.u0(x - ct) + data.u0(x + ct));
  if (data.kind() == DataKind::bump || ct == 0.0) return even;
  return even + (velocity_antiderivative(data, x + ct) - velocity_antiderivative(data, x - ct)) /
                    (2.0 * speed);
}

std::vector<double> dalembert_field(const InitialData& data, const GridSpec& grid, double t,
                                    double speed) {
  std::vector<double> out(grid.n_points);
  for (std::size_t j = 0; j < grid.n_points; ++j) out[j] = dalembert(data, t, grid.x(j), speed);
  return out;
}

double convergence_order(std::span<const std::pair<double, double>> errors_at_h) {
  if (errors_at_h.size() < 2) throw ValidationError("levels", "at least two (h, error) pairs");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < errors_at_h.size(); ++i) {
    const auto [h, err] = errors_at_h[i];
    if (!(err > 0.0) || !std::isfinite(err)) {
      std::ostringstream msg;
      msg << "error " << err << " at h = " << h << " has no logarithm";
      throw DegenerateOrderError(msg.str());
    }
    if (!(h > 0.0) || (i > 0 && !(h < errors_at_h[i - 1].first)))
      throw ValidationError("h", "step sizes must be positive and strictly decreasing");
    lx.push_back(std::log(h));
    ly.push_back(std::log(err));
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i] / n;
    my += ly[i] / n;
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  return sxy / sxx;
}

namespace {

// Fourier transforms of u0 and u1 by the trapezoid rule on their support.
// The built-in data vanish to all orders at the support ends, where the
// trapezoid rule converges faster than any power of the node spacing.
class Spectrum {
 public:
  Spectrum(const InitialData& data, double cutoff) {
    lo_ = data.support_lo();
    const double width = std::max(data.support_hi() - lo_, 1e-12);
    std::size_t m = 256;
    while (width / static_cast<double>(m) * cutoff > std::numbers::pi / 4.0) m *= 2;
    delta_ = width / static_cast<double>(m);
    f0_.resize(m + 1);
    f1_.resize(m + 1);
    for (std::size_t k = 0; k <= m; ++k) {
      const double x = lo_ + delta_ * static_cast<double>(k);
      const double w = (k == 0 || k == m) ? 0.5 : 1.0;
      f0_[k] = w * delta_ * data.u0(x);
      f1_[k] = w * delta_ * data.u1(x);
    }
  }

  std::pair<Complex, Complex> at(double xi) const {
    Complex phase = std::polar(1.0, -lo_ * xi);
    const Complex rot = std::polar(1.0, -delta_ * xi);
    Complex s0{}, s1{};
    for (std::size_t k = 0; k < f0_.size(); ++k) {
      s0 += f0_[k] * phase;
      s1 += f1_[k] * phase;
      phase *= rot;
    }
    return {s0, s1};
  }

 private:
  double lo_ = 0.0;
  double delta_ = 0.0;
  std::vector<double> f0_, f1_;
};

double integrand(const std::pair<Complex, Complex>& hat, double xi, double ct, double speed) {
  const double c = std::cos(ct * xi);
  // sin(ct xi) / (speed xi) with its limit t at xi = 0.
  const double s = xi == 0.0 ? ct / speed : std::sin(ct * xi) / (speed * xi);
  return std::norm(hat.first * c + hat.second * s);
}

// Frequency beyond which |u0^|^2 + |u1^|^2 min(t^2, 1/(c xi)^2) stays below
// 1e-8 of its peak.
double choose_cutoff(const InitialData& data, double speed, double t_max) {
  const double width = std::max(data.support_hi() - data.support_lo(), 1e-12);
  const double scan_end = 1200.0 / width;
  const double step = 0.05 / width;
  const Spectrum coarse(data, scan_end);
  std::vector<double> env;
  double peak = 0.0;
  for (double xi = 0.0; xi <= scan_end; xi += step) {
    const auto hat = coarse.at(xi);
    const double weight = xi == 0.0 ? t_max * t_max : std::min(t_max * t_max, 1.0 / (speed * speed * xi * xi));
    const double g = std::norm(hat.first) + std::norm(hat.second) * weight;
    env.push_back(g);
    peak = std::max(peak, g);
  }
  if (peak == 0.0) return 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < env.size(); ++i)
    if (env[i] > 1e-8 * peak) last = i;
  if (last + 1 >= env.size())
    throw AccuracyError("spectrum does not decay to 1e-8 of its peak within the scan", env.back() / peak);
  return step * static_cast<double>(last + 1);
}

struct NormTable {
  std::vector<double> values;
  std::vector<double> errors;
};

NormTable fourier_norms(const InitialData& data, double speed, std::span<const double> times) {
  NormTable out;
  if (speed <= 0.0) throw ValidationError("speed", "must be positive");
  double t_max = 0.0;
  for (double t : times) {
    if (!(t >= 0.0)) throw ValidationError("t", "must be non-negative");
    t_max = std::max(t_max, t);
  }
  const double cutoff = choose_cutoff(data, speed, std::max(t_max, 1.0));
  if (cutoff == 0.0) {
    out.values.assign(times.size(), 0.0);
    out.errors.assign(times.size(), 0.0);
    return out;
  }
  // Resolve the fastest oscillation cos(2 c t xi) with 16 intervals per period.
  const double period = std::numbers::pi / (speed * std::max(t_max, 1.0));
  auto intervals = static_cast<std::size_t>(std::ceil(cutoff / (period / 16.0)));
  intervals += intervals % 4;  // even at both Simpson resolutions
  const double dxi = cutoff / static_cast<double>(intervals);

  const Spectrum spectrum(data, cutoff);
  std::vector<std::pair<Complex, Complex>> hats(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) hats[i] = spectrum.at(dxi * static_cast<double>(i));

  for (double t : times) {
    const double ct = speed * t;
    double fine = 0.0, coarse = 0.0;
    for (std::size_t i = 0; i <= intervals; ++i) {
      const double g = integrand(hats[i], dxi * static_cast<double>(i), ct, speed);
      const double wf = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      fine += wf * g;
      if (i % 2 == 0) {
        const std::size_t k = i / 2;
        const double wc = (i == 0 || i == intervals) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        coarse += wc * g;
      }
    }
    fine *= dxi / 3.0;
    coarse *= 2.0 * dxi / 3.0;
    out.values.push_back(fine / std::numbers::pi);
    out.errors.push_back(std::abs(fine - coarse) / 15.0 / std::numbers::pi);
  }
  return out;
}

}  // namespace

OracleResult fourier_norm_sq(const InitialData& data, double t, double speed) {
  const std::array<double, 1> times{t};
  const auto table = fourier_norms(data, speed, times);
  return OracleResult{table.values[0], table.errors[0], "plancherel-simpson"};
}

OracleResult fourier_growth_slope(const InitialData& data, double speed,
                                  std::span<const double> times) {
  if (times.size() < 2) throw ValidationError("times", "at least two sample times");
  const auto table = fourier_norms(data, speed, times);
  const double n = static_cast<double>(times.size());
  double mt = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    mt += times[i] / n;
    mv += table.values[i] / n;
  }
  double stt = 0.0, stv = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    stt += (times[i] - mt) * (times[i] - mt);
    stv += (times[i] - mt) * (table.values[i] - mv);
  }
  if (!(stt > 0.0)) throw ValidationError("times", "sample times must be distinct");
  OracleResult out;
  out.value = stv / stt;
  out.method = "plancherel-simpson linear trend";

  double spread = 0.0, quad = 0.0;
  std::vector<double> secants;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double dt = times[i + 1] - times[i];
    secants.push_back((table.values[i + 1] - table.values[i]) / dt);
    quad = std::max(quad, (table.errors[i] + table.errors[i + 1]) / std::abs(dt));
  }
  for (std::size_t i = 0; i + 1 < secants.size(); ++i)
    spread = std::max(spread, std::abs(secants[i + 1] - secants[i]));
  out.error_estimate = spread + quad;
  return out;
}

}  // namespace wavebound::oracles
