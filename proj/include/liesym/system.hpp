// Equation systems over jet coordinates, on-manifold sampling, and the
// infinitesimal symmetry residual check.
//
// A system carries one residual expression per equation plus a solve rule per
// equation expressing a distinguished derivative from the remaining jet
// coordinates on the solution manifold.  Rules are applied in order, so a
// later rule may reference coordinates fixed by an earlier one.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "liesym/generator.hpp"
#include "liesym/jet.hpp"
#include "liesym/report.hpp"
#include "liesym/sampling.hpp"

namespace liesym {

struct SolveRule {
  std::string coord;
  Expr rhs;
};

struct EquationSystem {
  std::string name;
  JetSpace space;
  std::vector<Expr> residuals;
  std::vector<SolveRule> solve;
  SampleBox jet_box;
};

// Default jet sampling box: independent variables in [-1,1], dependent
// variables and derivative coordinates in [-2,2].
inline SampleBox default_jet_box(const JetSpace& space) {
  SampleBox box;
  for (const std::string& v : space.indep()) box.vars.push_back(VarSpec::real(v, -1.0, 1.0));
  for (const std::string& c : space.all_coordinates())
    box.vars.push_back(VarSpec::real(c, -2.0, 2.0));
  return box;
}

// Scale-aware residual magnitude: |value| over 1 + the sum of top-level term
// magnitudes when the expression is a sum, so cancellation quality is what is
// measured rather than raw size.
inline double scaled_residual(const Expr& residual, const EvaluationPoint& pt) {
  if (residual.kind() == NodeKind::Sum) {
    Complex total = 0.0;
    double scale = 1.0;
    for (const Expr& term : residual.args()) {
      const Complex v = evaluate(term, pt);
      total += v;
      scale += std::abs(v);
    }
    return std::abs(total) / scale;
  }
  return std::abs(evaluate(residual, pt));
}

// Draws a jet point and projects it onto the solution manifold by replacing
// each distinguished derivative with its solve rule.
inline EvaluationPoint sample_on_manifold(const EquationSystem& sys, std::mt19937_64& rng,
                                          int* resampled = nullptr) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    SampleStats stats;
    EvaluationPoint pt = sample_point(sys.jet_box, rng, &stats);
    if (resampled) *resampled += stats.resampled;
    bool ok = true;
    try {
      for (const SolveRule& rule : sys.solve) {
        const Complex v = evaluate(rule.rhs, pt);
        if (std::abs(v) > 1e6) {
          ok = false;  // solve rule blow-up: resample and log
          break;
        }
        pt[rule.coord] = v;
      }
      if (ok) {
        for (const Expr& r : sys.residuals)
          if (scaled_residual(r, pt) > 1e-10)
            throw std::logic_error("solve rules inconsistent with residual in system " + sys.name);
        return pt;
      }
    } catch (const EvalError&) {
      ok = false;
    }
    if (resampled) ++*resampled;
  }
  throw std::runtime_error("sample_on_manifold: persistent solve-rule failure in " + sys.name);
}

// Highest derivative order actually present in the residuals.
inline int residual_order(const EquationSystem& sys) {
  int order = 0;
  for (const Expr& r : sys.residuals)
    for (const std::string& v : free_variables(r))
      if (sys.space.is_coord(v))
        order = std::max(order, total_order(sys.space.coord_info(v).index));
  return order;
}

// Symbolic Lie derivative of a residual: X*(D) = sum_i xi_i dD/dx_i
// + sum_{a,J} zeta^J_a dD/du_{a,J}, using the prolonged coefficients.
inline Expr lie_derivative(const GeneratorField& g, const Expr& residual,
                           const JetSpace& space, int order) {
  const std::map<std::string, Expr> pro = prolong(g, order, space);
  Expr r = 0.0;
  for (std::size_t i = 0; i < g.indep.size(); ++i)
    r = r + g.xi[i] * differentiate(residual, g.indep[i]);
  for (const std::string& v : free_variables(residual)) {
    if (!space.is_coord(v)) continue;
    auto it = pro.find(v);
    if (it == pro.end()) throw std::logic_error("prolongation missing coordinate " + v);
    r = r + it->second * differentiate(residual, v);
  }
  return simplify(r);
}

// Samples |expr| (scale-aware) over a box; passes iff the maximum stays
// below tol.  Used for identities that must vanish pointwise.
inline ResidualReport expression_zero_report(const Expr& expr, const SampleBox& box, int samples,
                                             std::uint64_t seed, double tol,
                                             std::string check_name) {
  ResidualReport rep;
  rep.check = std::move(check_name);
  rep.seed = seed;
  rep.tolerance = tol;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 200)
        throw std::runtime_error("expression_zero_report: domain rejects samples for " +
                                 rep.check);
      SampleStats stats;
      const EvaluationPoint pt = sample_point(box, rng, &stats);
      rep.resampled += stats.resampled;
      try {
        rep.add(scaled_residual(expr, pt), pt);
        break;
      } catch (const EvalError&) {
        ++rep.resampled;
      }
    }
  }
  rep.finalize();
  return rep;
}

// On-manifold infinitesimal symmetry check.  At each seeded-random jet point
// the distinguished derivatives are replaced by their solve rules, then the
// contraction of the prolonged field with each residual's gradient is
// evaluated; the report passes iff the scaled maximum stays below tol.
inline ResidualReport infinitesimal_symmetry_check(const GeneratorField& g,
                                                   const EquationSystem& sys, int samples,
                                                   std::uint64_t seed, double tol,
                                                   std::string check_name = {}) {
  if (g.contact)
    throw std::invalid_argument("contact fields use the conditional-symmetry path");
  const int order = residual_order(sys);
  const std::map<std::string, Expr> pro = prolong(g, order, sys.space);

  // per-residual list of (coefficient, gradient component)
  struct Term {
    Expr coeff, partial;
  };
  std::vector<std::vector<Term>> eq_terms;
  for (const Expr& res : sys.residuals) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < g.indep.size(); ++i) {
      Expr p = simplify(differentiate(res, g.indep[i]));
      if (!p.is_constant(0.0)) terms.push_back({g.xi[i], p});
    }
    for (const std::string& v : free_variables(res)) {
      if (!sys.space.is_coord(v)) continue;
      Expr p = simplify(differentiate(res, v));
      if (!p.is_constant(0.0)) terms.push_back({pro.at(v), p});
    }
    eq_terms.push_back(std::move(terms));
  }

  ResidualReport report;
  report.check = check_name.empty() ? g.label + " on " + sys.name : std::move(check_name);
  report.seed = seed;
  report.tolerance = tol;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const EvaluationPoint pt = sample_on_manifold(sys, rng, &report.resampled);
    double worst = 0.0;
    for (const auto& terms : eq_terms) {
      Complex total = 0.0;
      double scale = 1.0;
      for (const Term& t : terms) {
        const Complex v = evaluate(t.coeff, pt) * evaluate(t.partial, pt);
        total += v;
        scale += std::abs(v);
      }
      worst = std::max(worst, std::abs(total) / scale);
    }
    report.add(worst, pt);
  }
  report.finalize();
  return report;
}

}  // namespace liesym
