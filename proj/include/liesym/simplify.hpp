// Structural simplification: constant folding, neutral-element elimination,
// associativity flattening of sums/products, and like-term collection at one
// level.  No trigonometric or algebraic rewriting — semantic equality is the
// job of numeric_equal, never of simplify.
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "liesym/eval.hpp"
#include "liesym/expr.hpp"

namespace liesym {

namespace detail {

// commutativity normalization: order children by canonical prefix key
inline void sort_by_key(std::vector<Expr>& items) {
  std::stable_sort(items.begin(), items.end(),
                   [](const Expr& a, const Expr& b) { return to_prefix(a) < to_prefix(b); });
}

// term -> (numeric coefficient, core factors); the core is what like-term
// collection keys on.
struct TermParts {
  Complex coeff{1.0, 0.0};
  std::vector<Expr> core;
};

inline TermParts split_term(const Expr& t) {
  TermParts p;
  if (t.is_constant()) {
    p.coeff = t.value();
    return p;
  }
  if (t.kind() == NodeKind::Negate) {
    TermParts inner = split_term(t[0]);
    inner.coeff = -inner.coeff;
    return inner;
  }
  if (t.kind() == NodeKind::Product) {
    for (const Expr& f : t.args()) {
      if (f.is_constant())
        p.coeff *= f.value();
      else if (f.kind() == NodeKind::Negate) {
        p.coeff = -p.coeff;
        p.core.push_back(f[0]);
      } else
        p.core.push_back(f);
    }
    sort_by_key(p.core);
    return p;
  }
  p.core.push_back(t);
  return p;
}

inline Expr rebuild_term(Complex coeff, const std::vector<Expr>& core) {
  Expr body = 1.0;
  if (core.size() == 1)
    body = core[0];
  else if (!core.empty())
    body = Expr::make(NodeKind::Product, core);
  if (core.empty()) return Expr::constant(coeff);
  if (coeff == Complex(1.0, 0.0)) return body;
  if (coeff == Complex(-1.0, 0.0)) return -body;
  return Expr::constant(coeff) * body;
}

inline std::string core_key(const std::vector<Expr>& core) {
  std::string key;
  for (const Expr& f : core) {
    key += to_prefix(f);
    key += '|';
  }
  return key;
}

inline Expr simplify_once(const Expr& e) {
  // children first
  std::vector<Expr> kids;
  kids.reserve(e.arity());
  for (const Expr& c : e.args()) kids.push_back(simplify_once(c));

  auto all_const = [&] {
    for (const Expr& k : kids)
      if (!k.is_constant()) return false;
    return true;
  };

  switch (e.kind()) {
    case NodeKind::Constant:
    case NodeKind::Variable:
      return e;

    case NodeKind::Negate: {
      const Expr& a = kids[0];
      if (a.is_constant()) return Expr::constant(-a.value());
      if (a.kind() == NodeKind::Negate) return a[0];
      return Expr::make(NodeKind::Negate, {a});
    }

    case NodeKind::Sum: {
      // flatten, fold constants, collect like terms in first-appearance order
      std::vector<Expr> flat;
      auto splice = [&](auto&& self, const Expr& t, bool negate) -> void {
        if (t.kind() == NodeKind::Sum) {
          for (const Expr& c : t.args()) self(self, c, negate);
        } else if (t.kind() == NodeKind::Negate && t[0].kind() == NodeKind::Sum) {
          for (const Expr& c : t[0].args()) self(self, c, !negate);
        } else {
          flat.push_back(negate ? -t : t);
        }
      };
      for (const Expr& k : kids) splice(splice, k, false);

      Complex const_part{0.0, 0.0};
      std::vector<std::string> order;
      std::map<std::string, TermParts> groups;
      for (const Expr& t : flat) {
        TermParts p = split_term(t);
        if (p.core.empty()) {
          const_part += p.coeff;
          continue;
        }
        const std::string key = core_key(p.core);
        auto it = groups.find(key);
        if (it == groups.end()) {
          order.push_back(key);
          groups.emplace(key, std::move(p));
        } else {
          it->second.coeff += p.coeff;
        }
      }
      std::sort(order.begin(), order.end());
      std::vector<Expr> terms;
      for (const std::string& key : order) {
        const TermParts& p = groups.at(key);
        if (p.coeff == Complex(0.0, 0.0)) continue;
        terms.push_back(rebuild_term(p.coeff, p.core));
      }
      if (const_part != Complex(0.0, 0.0)) terms.push_back(Expr::constant(const_part));
      if (terms.empty()) return Expr(0.0);
      if (terms.size() == 1) return terms[0];
      return Expr::make(NodeKind::Sum, std::move(terms));
    }

    case NodeKind::Product: {
      std::vector<Expr> flat;
      Complex coeff{1.0, 0.0};
      auto splice = [&](auto&& self, const Expr& f) -> void {
        if (f.kind() == NodeKind::Product) {
          for (const Expr& c : f.args()) self(self, c);
        } else if (f.kind() == NodeKind::Negate) {
          coeff = -coeff;
          self(self, f[0]);
        } else if (f.is_constant()) {
          coeff *= f.value();
        } else {
          flat.push_back(f);
        }
      };
      for (const Expr& k : kids) splice(splice, k);
      if (coeff == Complex(0.0, 0.0)) return Expr(0.0);
      if (flat.empty()) return Expr::constant(coeff);
      sort_by_key(flat);
      Expr body = flat.size() == 1 ? flat[0] : Expr::make(NodeKind::Product, std::move(flat));
      if (coeff == Complex(1.0, 0.0)) return body;
      if (coeff == Complex(-1.0, 0.0)) return Expr::make(NodeKind::Negate, {body});
      std::vector<Expr> args{Expr::constant(coeff), body};
      if (body.kind() == NodeKind::Product) {
        args.clear();
        args.push_back(Expr::constant(coeff));
        for (const Expr& f : body.args()) args.push_back(f);
      }
      return Expr::make(NodeKind::Product, std::move(args));
    }

    case NodeKind::Quotient: {
      const Expr &n = kids[0], &d = kids[1];
      if (d.is_constant(1.0)) return n;
      if (n.is_constant(0.0)) return n;
      if (n.is_constant() && d.is_constant() && d.value() != Complex(0.0, 0.0))
        return Expr::constant(n.value() / d.value());
      if (d.is_constant() && d.value() != Complex(0.0, 0.0))
        return simplify_once(Expr::constant(Complex(1.0, 0.0) / d.value()) * n);
      return Expr::make(NodeKind::Quotient, {n, d});
    }

    case NodeKind::Power: {
      const Expr &b = kids[0], &x = kids[1];
      if (x.is_constant(1.0)) return b;
      if (x.is_constant(0.0)) return Expr(1.0);
      if (b.is_constant(1.0)) return b;
      if (b.is_constant() && x.is_constant()) {
        try {
          return Expr::constant(evaluate(pow(Expr::constant(b.value()), Expr::constant(x.value())),
                                         EvaluationPoint{}));
        } catch (const EvalError&) {
          // leave unfolded, evaluation will report the domain error
        }
      }
      return Expr::make(NodeKind::Power, {b, x});
    }

    case NodeKind::Apply: {
      if (all_const()) {
        try {
          return Expr::constant(evaluate(Expr::apply(e.func(), kids), EvaluationPoint{}));
        } catch (const EvalError&) {
        }
      }
      return Expr::apply(e.func(), std::move(kids));
    }
  }
  return e;
}

}  // namespace detail

inline Expr simplify(const Expr& e) {
  Expr cur = e;
  for (int iter = 0; iter < 8; ++iter) {
    Expr next = detail::simplify_once(cur);
    if (structural_equal(next, cur)) return next;
    cur = next;
  }
  return cur;
}

}  // namespace liesym
