// Exact symbolic differentiation, closed over the node set.
//
// differentiate()          — partial derivative with respect to a real variable;
//                            abs/re/im/conj get the 2-D real-composite rules.
// differentiate_holomorphic() — complex derivative d/dz; rejects subtrees where
//                            a non-holomorphic node encloses the variable.
#pragma once

#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include "liesym/expr.hpp"

namespace liesym {

class NonHolomorphicError : public std::runtime_error {
 public:
  NonHolomorphicError(const Expr& subtree, std::string_view variable)
      : std::runtime_error("derivative of non-holomorphic node with respect to complex variable '" +
                           std::string(variable) + "' in " + to_prefix(subtree)) {}
};

namespace detail {

inline Expr diff_impl(const Expr& e, std::string_view v, bool holomorphic) {
  if (!contains_variable(e, v)) return Expr(0.0);
  auto d = [&](const Expr& c) { return diff_impl(c, v, holomorphic); };
  switch (e.kind()) {
    case NodeKind::Constant:
      return Expr(0.0);
    case NodeKind::Variable:
      return Expr(1.0);  // contains_variable already matched the name
    case NodeKind::Sum: {
      Expr r = 0.0;
      for (const Expr& c : e.args()) r = r + d(c);
      return r;
    }
    case NodeKind::Product: {
      // n-ary product rule
      Expr r = 0.0;
      for (std::size_t i = 0; i < e.arity(); ++i) {
        if (!contains_variable(e[i], v)) continue;
        Expr term = d(e[i]);
        for (std::size_t j = 0; j < e.arity(); ++j)
          if (j != i) term = term * e[j];
        r = r + term;
      }
      return r;
    }
    case NodeKind::Negate:
      return -d(e[0]);
    case NodeKind::Quotient: {
      const Expr &f = e[0], &g = e[1];
      if (!contains_variable(g, v)) return d(f) / g;
      return (d(f) * g - f * d(g)) / sq(g);
    }
    case NodeKind::Power: {
      const Expr &f = e[0], &g = e[1];
      const bool fv = contains_variable(f, v), gv = contains_variable(g, v);
      if (fv && !gv) return g * pow(f, g - 1.0) * d(f);
      if (!fv && gv) return pow(f, g) * ln(f) * d(g);
      return pow(f, g) * (d(g) * ln(f) + g * d(f) / f);
    }
    case NodeKind::Apply: {
      const Expr& f = e[0];
      switch (e.func()) {
        case Func::Exp:  return exp(f) * d(f);
        case Func::Ln:   return d(f) / f;
        case Func::Sin:  return cos(f) * d(f);
        case Func::Cos:  return -(sin(f) * d(f));
        case Func::Sinh: return cosh(f) * d(f);
        case Func::Cosh: return sinh(f) * d(f);
        case Func::Sqrt: return d(f) / (2.0 * sqrt(f));
        case Func::Erf:
          return (2.0 * std::numbers::inv_sqrtpi) * exp(-(sq(f))) * d(f);
        case Func::Atan2: {
          const Expr &p = e[0], &q = e[1];
          return (q * d(p) - p * d(q)) / (sq(p) + sq(q));
        }
        case Func::Abs:
          if (holomorphic) throw NonHolomorphicError(e, v);
          return re(conj(f) * d(f)) / abs(f);
        case Func::Re:
          if (holomorphic) throw NonHolomorphicError(e, v);
          return re(d(f));
        case Func::Im:
          if (holomorphic) throw NonHolomorphicError(e, v);
          return im(d(f));
        case Func::Conj:
          if (holomorphic) throw NonHolomorphicError(e, v);
          return conj(d(f));
      }
      break;
    }
  }
  throw std::logic_error("diff: unreachable node kind");
}

}  // namespace detail

inline Expr differentiate(const Expr& e, std::string_view variable) {
  return detail::diff_impl(e, variable, /*holomorphic=*/false);
}

inline Expr differentiate_holomorphic(const Expr& e, std::string_view variable) {
  return detail::diff_impl(e, variable, /*holomorphic=*/true);
}

}  // namespace liesym
