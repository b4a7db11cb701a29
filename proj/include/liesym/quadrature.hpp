// Adaptive Simpson quadrature with a posteriori error estimates.  Smooth,
// bounded integrands only; callers transform away singular tails first.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace liesym {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // accumulated estimate
};

namespace detail {

inline void adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                 double fa, double fm, double fb, double whole, double tol,
                                 int depth, QuadratureResult& out) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = (left + right - whole) / 15.0;
  if (depth <= 0 || std::abs(err) <= tol) {
    out.value += left + right + err;  // Richardson correction
    out.error += std::abs(err);
    return;
  }
  adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, out);
  adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, out);
}

}  // namespace detail

inline QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a,
                                         double b, double tol = 1e-10, int max_depth = 40) {
  if (a == b) return {};
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  QuadratureResult out;
  detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth, out);
  if (!std::isfinite(out.value)) throw std::runtime_error("adaptive_simpson: non-finite integral");
  return out;
}

}  // namespace liesym
