// Complex error function: Maclaurin series inside |z| <= 3, Laplace
// continued fraction (modified Lentz) outside, with erf(-z) = -erf(z)
// reflection into the right half plane.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace liesym {

namespace detail {

inline std::complex<double> erf_series(std::complex<double> z) {
  // erf(z) = 2/sqrt(pi) * sum_n (-1)^n z^(2n+1) / (n! (2n+1))
  const std::complex<double> z2 = z * z;
  std::complex<double> term = z;  // n = 0 term before the 1/(2n+1) weight
  std::complex<double> sum = z;
  for (int n = 1; n < 160; ++n) {
    term *= -z2 / static_cast<double>(n);
    const std::complex<double> contrib = term / static_cast<double>(2 * n + 1);
    sum += contrib;
    if (std::abs(contrib) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return (2.0 * std::numbers::inv_sqrtpi) * sum;
}

// Laplace continued fraction for w = sqrt(pi) e^{z^2} erfc(z), Re z > 0:
//   w = 1/(z + (1/2)/(z + (2/2)/(z + (3/2)/(z + ...))))
inline std::complex<double> erfc_scaled_cf(std::complex<double> z) {
  const double tiny = 1e-290;
  std::complex<double> f = z, c = z, d = 0.0;
  if (std::abs(f) < tiny) f = tiny;
  for (int n = 1; n < 300; ++n) {
    const double a = 0.5 * n;
    d = z + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = z + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const std::complex<double> delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / f;
}

}  // namespace detail

inline std::complex<double> erf_complex(std::complex<double> z) {
  if (z.imag() == 0.0) return {std::erf(z.real()), 0.0};
  if (std::abs(z) <= 3.0) return detail::erf_series(z);
  if (z.real() < 0.0) return -erf_complex(-z);
  // erf(z) = 1 - e^{-z^2}/sqrt(pi) * w(z)
  const std::complex<double> w = detail::erfc_scaled_cf(z);
  return 1.0 - std::exp(-z * z) * std::numbers::inv_sqrtpi * w;
}

}  // namespace liesym
