#include "wavebound/numerics.hpp"

#include <cmath>
#include <sstream>

#include "wavebound/errors.hpp"

namespace wavebound::numerics {

double trapezoid(std::span<const double> values, double h) {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t j = 1; j + 1 < values.size(); ++j) sum += values[j];
  return sum * h;
}

double trapezoid_sq(std::span<const double> values, double h) {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() * values.front() + values.back() * values.back());
  for (std::size_t j = 1; j + 1 < values.size(); ++j) sum += values[j] * values[j];
  return sum * h;
}

void cumulative_trapezoid(std::span<const double> values, double h, std::span<double> out) {
  if (values.empty()) return;
  out[0] = 0.0;
  double acc = 0.0;
  for (std::size_t j = 1; j < values.size(); ++j) {
    acc += 0.5 * h * (values[j - 1] + values[j]);
    out[j] = acc;
  }
}

std::vector<double> cumulative_trapezoid(std::span<const double> values, double h) {
  std::vector<double> out(values.size());
  cumulative_trapezoid(values, h, out);
  return out;
}

void centered_difference(std::span<const double> values, double h, std::span<double> out) {
  const std::size_t n = values.size();
  if (n == 0) return;
  out[0] = 0.0;
  out[n - 1] = 0.0;
  const double inv = 0.5 / h;
  for (std::size_t j = 1; j + 1 < n; ++j) out[j] = (values[j + 1] - values[j - 1]) * inv;
}

std::vector<double> centered_difference(std::span<const double> values, double h) {
  std::vector<double> out(values.size());
  centered_difference(values, h, out);
  return out;
}

namespace {

struct SimpsonPanel {
  const std::function<double(double)>& f;
  int max_depth;
  bool converged = true;

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                 int depth, double& err) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
      err += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth >= max_depth) {
      converged = false;
      err += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, err) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, err);
  }
};

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, std::size_t panels, int max_depth) {
  QuadratureResult result;
  if (a == b) return result;
  if (panels == 0) panels = 1;
  const double width = (b - a) / static_cast<double>(panels);
  const double panel_tol = abs_tol / static_cast<double>(panels);
  SimpsonPanel worker{f, max_depth};
  double fa = f(a);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + width * static_cast<double>(p);
    const double hi = (p + 1 == panels) ? b : lo + width;
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    const double fb = f(hi);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    result.value += worker.recurse(lo, hi, fa, fm, fb, whole, panel_tol, 0, result.error_estimate);
    fa = fb;
  }
  result.converged = worker.converged;
  return result;
}

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 std::size_t panels) {
  const auto r = adaptive_simpson(f, a, b, abs_tol, panels);
  if (!r.converged || !std::isfinite(r.value)) {
    std::ostringstream msg;
    msg << "adaptive Simpson on [" << a << ", " << b << "] did not reach tolerance " << abs_tol
        << " (estimate " << r.error_estimate << ")";
    throw AccuracyError(msg.str(), r.error_estimate);
  }
  return r.value;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw FitError("line fit needs at least two paired samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 0.0) throw FitError("line fit needs at least two distinct abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace wavebound::numerics
