// Numeric evaluation of expression trees in IEEE double precision, real or
// complex, with principal branches throughout.  Domain errors carry the
// offending subtree in canonical prefix form.
#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>

#include "liesym/expr.hpp"
#include "liesym/special.hpp"

namespace liesym {

using EvaluationPoint = std::map<std::string, Complex, std::less<>>;

class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& what, const Expr& subtree)
      : std::runtime_error(what + " in " + to_prefix(subtree)) {}
};

namespace detail {

inline bool near_real(Complex v) {
  return std::abs(v.imag()) <= 1e-12 * (1.0 + std::abs(v.real()));
}

inline bool is_finite(Complex v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

// Integer powers by binary exponentiation; keeps negative real bases exact.
inline Complex ipow(Complex b, long long n) {
  if (n < 0) return 1.0 / ipow(b, -n);
  Complex r = 1.0;
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

}  // namespace detail

inline Complex evaluate(const Expr& e, const EvaluationPoint& pt) {
  Complex r;
  switch (e.kind()) {
    case NodeKind::Constant:
      return e.value();
    case NodeKind::Variable: {
      auto it = pt.find(e.name());
      if (it == pt.end()) throw EvalError("unbound variable '" + e.name() + "'", e);
      return it->second;
    }
    case NodeKind::Sum: {
      r = 0.0;
      for (const Expr& c : e.args()) r += evaluate(c, pt);
      break;
    }
    case NodeKind::Product: {
      r = 1.0;
      for (const Expr& c : e.args()) r *= evaluate(c, pt);
      break;
    }
    case NodeKind::Negate:
      r = -evaluate(e[0], pt);
      break;
    case NodeKind::Quotient: {
      const Complex den = evaluate(e[1], pt);
      if (den == Complex(0.0, 0.0)) throw EvalError("division by zero", e);
      r = evaluate(e[0], pt) / den;
      break;
    }
    case NodeKind::Power: {
      const Complex b = evaluate(e[0], pt);
      const Complex x = evaluate(e[1], pt);
      const double xr = x.real();
      const bool int_exp = x.imag() == 0.0 && std::abs(xr - std::round(xr)) < 1e-12 &&
                           std::abs(xr) <= 1024.0;
      if (b == Complex(0.0, 0.0)) {
        if (x == Complex(0.0, 0.0)) { r = 1.0; break; }
        if (x.imag() == 0.0 && xr > 0.0) { r = 0.0; break; }
        throw EvalError("zero base with nonpositive exponent", e);
      }
      if (int_exp)
        r = detail::ipow(b, static_cast<long long>(std::llround(xr)));
      else
        r = std::exp(x * std::log(b));  // principal branch
      break;
    }
    case NodeKind::Apply: {
      const Complex a = evaluate(e[0], pt);
      switch (e.func()) {
        case Func::Exp:  r = std::exp(a); break;
        case Func::Ln:
          if (a == Complex(0.0, 0.0)) throw EvalError("log of zero", e);
          if (a.imag() == 0.0 && a.real() < 0.0)
            throw EvalError("log of negative real", e);
          r = std::log(a);
          break;
        case Func::Sin:  r = std::sin(a); break;
        case Func::Cos:  r = std::cos(a); break;
        case Func::Sinh: r = std::sinh(a); break;
        case Func::Cosh: r = std::cosh(a); break;
        case Func::Atan2: {
          const Complex b = evaluate(e[1], pt);
          if (!detail::near_real(a) || !detail::near_real(b))
            throw EvalError("arctan2 of non-real arguments", e);
          if (a.real() == 0.0 && b.real() == 0.0)
            throw EvalError("arctan2(0, 0)", e);
          r = std::atan2(a.real(), b.real());
          break;
        }
        case Func::Erf:
          r = a.imag() == 0.0 ? Complex(std::erf(a.real()), 0.0) : erf_complex(a);
          break;
        case Func::Abs:  r = std::abs(a); break;
        case Func::Re:   r = a.real(); break;
        case Func::Im:   r = a.imag(); break;
        case Func::Conj: r = std::conj(a); break;
        case Func::Sqrt: r = std::sqrt(a); break;  // principal branch
      }
      break;
    }
    default:
      throw EvalError("unreachable node kind", e);
  }
  if (!detail::is_finite(r)) throw EvalError("non-finite result", e);
  return r;
}

inline double evaluate_real(const Expr& e, const EvaluationPoint& pt) {
  const Complex v = evaluate(e, pt);
  if (!detail::near_real(v) && std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real())))
    throw EvalError("expected real value, imaginary part " + format_double(v.imag()), e);
  return v.real();
}

}  // namespace liesym
