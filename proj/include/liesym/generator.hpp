// Infinitesimal generator fields and their prolongation to jet space.
//
// A point field has coefficients over (independent, dependent) variables
// only; the contact flag marks fields whose coefficients reference first
// derivatives, which are excluded from the standard prolongation path and
// handled by the dedicated conditional-symmetry checks.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "liesym/jet.hpp"
#include "liesym/sampling.hpp"
#include "liesym/simplify.hpp"

namespace liesym {

struct GeneratorField {
  std::string label;
  std::vector<std::string> indep, dep;
  std::vector<Expr> xi;    // one per independent variable
  std::vector<Expr> zeta;  // one per dependent variable
  bool contact = false;

  const Expr& xi_for(std::string_view name) const {
    for (std::size_t i = 0; i < indep.size(); ++i)
      if (indep[i] == name) return xi[i];
    throw std::invalid_argument("no such independent variable");
  }
  const Expr& zeta_for(std::string_view name) const {
    for (std::size_t i = 0; i < dep.size(); ++i)
      if (dep[i] == name) return zeta[i];
    throw std::invalid_argument("no such dependent variable");
  }
};

inline GeneratorField make_field(std::string label, std::vector<std::string> indep,
                                 std::vector<std::string> dep, std::vector<Expr> xi,
                                 std::vector<Expr> zeta, bool contact = false) {
  if (xi.size() != indep.size() || zeta.size() != dep.size())
    throw std::invalid_argument("coefficient count must match the variable lists");
  GeneratorField g{std::move(label), std::move(indep), std::move(dep),
                   std::move(xi),    std::move(zeta),  contact};
  if (!contact) {
    // point fields must not reference derivative coordinates
    for (const Expr* c : [&] {
           std::vector<const Expr*> all;
           for (const Expr& e : g.xi) all.push_back(&e);
           for (const Expr& e : g.zeta) all.push_back(&e);
           return all;
         }()) {
      for (const std::string& v : free_variables(*c)) {
        bool known = false;
        for (const std::string& n : g.indep) known |= (n == v);
        for (const std::string& n : g.dep) known |= (n == v);
        if (!known)
          throw std::invalid_argument("point field coefficient references '" + v + "'");
      }
    }
  }
  return g;
}

inline GeneratorField scale_field(const GeneratorField& g, double c) {
  GeneratorField out = g;
  out.label = format_double(c) + "*" + g.label;
  for (Expr& e : out.xi) e = simplify(c * e);
  for (Expr& e : out.zeta) e = simplify(c * e);
  return out;
}

inline GeneratorField add_fields(const GeneratorField& a, const GeneratorField& b) {
  if (a.indep != b.indep || a.dep != b.dep)
    throw std::invalid_argument("fields live on different variable contexts");
  GeneratorField out = a;
  out.label = a.label + "+" + b.label;
  out.contact = a.contact || b.contact;
  for (std::size_t i = 0; i < out.xi.size(); ++i) out.xi[i] = simplify(a.xi[i] + b.xi[i]);
  for (std::size_t i = 0; i < out.zeta.size(); ++i) out.zeta[i] = simplify(a.zeta[i] + b.zeta[i]);
  return out;
}

// Coefficient-wise comparison by randomized evaluation over a box on the
// (independent, dependent) variables.
inline bool fields_equal(const GeneratorField& a, const GeneratorField& b, const SampleBox& box,
                         int n, double tol, std::uint64_t seed) {
  if (a.indep != b.indep || a.dep != b.dep) return false;
  std::uint64_t s = seed;
  for (std::size_t i = 0; i < a.xi.size(); ++i)
    if (!numeric_equal(a.xi[i], b.xi[i], box, n, tol, ++s)) return false;
  for (std::size_t i = 0; i < a.zeta.size(); ++i)
    if (!numeric_equal(a.zeta[i], b.zeta[i], box, n, tol, ++s)) return false;
  return true;
}

// First-order action of a point field on a function of (indep, dep).
inline Expr apply_field(const GeneratorField& g, const Expr& f) {
  Expr r = 0.0;
  for (std::size_t i = 0; i < g.indep.size(); ++i) r = r + g.xi[i] * differentiate(f, g.indep[i]);
  for (std::size_t a = 0; a < g.dep.size(); ++a) r = r + g.zeta[a] * differentiate(f, g.dep[a]);
  return simplify(r);
}

// Commutator [g1,g2], coefficient-wise g1(coeffs of g2) - g2(coeffs of g1).
inline GeneratorField commutator(const GeneratorField& g1, const GeneratorField& g2) {
  if (g1.indep != g2.indep || g1.dep != g2.dep)
    throw std::invalid_argument("commutator requires a shared variable context");
  if (g1.contact || g2.contact)
    throw std::invalid_argument("commutator is defined here for point fields only");
  GeneratorField out;
  out.label = "[" + g1.label + "," + g2.label + "]";
  out.indep = g1.indep;
  out.dep = g1.dep;
  for (std::size_t i = 0; i < g1.indep.size(); ++i)
    out.xi.push_back(simplify(apply_field(g1, g2.xi[i]) - apply_field(g2, g1.xi[i])));
  for (std::size_t a = 0; a < g1.dep.size(); ++a)
    out.zeta.push_back(simplify(apply_field(g1, g2.zeta[a]) - apply_field(g2, g1.zeta[a])));
  return out;
}

// Prolonged coefficients zeta^J for |J| <= order, keyed by jet coordinate
// name, via the recursion  zeta^{J,i} = D_i zeta^J - sum_j (D_i xi_j) u_{J,j}.
inline std::map<std::string, Expr> prolong(const GeneratorField& g, int order,
                                           const JetSpace& space) {
  if (order < 1 || order > 3) throw std::invalid_argument("prolongation order must be 1..3");
  if (g.contact)
    throw std::invalid_argument("contact fields are not handled by the point prolongation");
  if (g.indep != space.indep() || g.dep != space.dep())
    throw std::invalid_argument("field and jet space variable lists differ");

  std::map<std::string, Expr> out;
  for (std::size_t a = 0; a < g.dep.size(); ++a) {
    out[space.coord(g.dep[a], MultiIndex(g.indep.size(), 0))] = g.zeta[a];
    for (const MultiIndex& j : space.indices()) {
      const int o = total_order(j);
      if (o < 1 || o > order) continue;
      // canonical construction path: strip the last nonzero slot
      std::size_t i = j.size();
      while (i > 0 && j[i - 1] == 0) --i;
      --i;
      MultiIndex k = j;
      --k[i];
      const Expr& zk = out.at(space.coord(g.dep[a], k));
      Expr zj = space.total_derivative(zk, i);
      for (std::size_t jj = 0; jj < g.indep.size(); ++jj) {
        MultiIndex kj = k;
        ++kj[jj];
        zj = zj - space.total_derivative(g.xi[jj], i) * space.coord_var(g.dep[a], kj);
      }
      out[space.coord(g.dep[a], j)] = simplify(zj);
    }
  }
  return out;
}

}  // namespace liesym
