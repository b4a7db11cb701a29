// Closed-form solutions: named expressions per dependent variable with a
// validity-domain sampling box, plus the residual oracle that evaluates a
// solution's full jet against an equation system.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "liesym/system.hpp"

namespace liesym {

struct ClosedFormSolution {
  std::vector<std::string> indep;
  std::vector<std::pair<std::string, Expr>> components;  // dependent name -> expression
  SampleBox domain;                                      // over independent variables
  std::string provenance;

  const Expr& component(std::string_view dep) const {
    for (const auto& [name, e] : components)
      if (name == dep) return e;
    throw std::invalid_argument("no component named " + std::string(dep));
  }
};

// All jet derivatives of the solution up to the space order, keyed by jet
// coordinate name.  Each mixed partial is derived once along the canonical
// construction path of its sorted multi-index.
inline std::map<std::string, Expr> solution_jet(const ClosedFormSolution& sol,
                                                const JetSpace& space) {
  if (space.indep() != sol.indep)
    throw std::invalid_argument("solution and jet space have different independent variables");
  std::map<std::string, Expr> jet;
  for (const auto& [dep, expr] : sol.components) {
    jet[space.coord(dep, MultiIndex(space.indep().size(), 0))] = simplify(expr);
    for (const MultiIndex& j : space.indices()) {
      if (total_order(j) == 0) continue;
      std::size_t i = j.size();
      while (i > 0 && j[i - 1] == 0) --i;
      --i;
      MultiIndex k = j;
      --k[i];
      const Expr& parent = jet.at(space.coord(dep, k));
      jet[space.coord(dep, j)] = simplify(differentiate(parent, space.indep()[i]));
    }
  }
  return jet;
}

// Evaluates the solution's jet at seeded-random domain points and reports the
// scaled residual of every equation in the system.
inline ResidualReport solution_residual_report(const ClosedFormSolution& sol,
                                               const EquationSystem& sys, int samples,
                                               std::uint64_t seed, double tol,
                                               std::string check_name = {}) {
  const std::map<std::string, Expr> jet = solution_jet(sol, sys.space);

  ResidualReport report;
  report.check = check_name.empty() ? sol.provenance + " on " + sys.name : std::move(check_name);
  report.seed = seed;
  report.tolerance = tol;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 200)
        throw std::runtime_error("solution_residual_report: domain keeps rejecting samples for " +
                                 report.check);
      SampleStats stats;
      EvaluationPoint pt = sample_point(sol.domain, rng, &stats);
      report.resampled += stats.resampled;
      try {
        EvaluationPoint full = pt;
        for (const auto& [coord, expr] : jet) full[coord] = evaluate_real(expr, pt);
        double worst = 0.0;
        for (const Expr& r : sys.residuals) worst = std::max(worst, scaled_residual(r, full));
        report.add(worst, pt);
        break;
      } catch (const EvalError&) {
        ++report.resampled;  // singular evaluation inside the box: resample, log
      }
    }
  }
  report.finalize();
  return report;
}

// Pointwise comparison of two solutions over a box (identity checks of flows
// at parameter zero and closed-form cross-checks).
inline bool solutions_pointwise_equal(const ClosedFormSolution& a, const ClosedFormSolution& b,
                                      const SampleBox& box, int n, double tol,
                                      std::uint64_t seed) {
  if (a.components.size() != b.components.size()) return false;
  std::uint64_t s = seed;
  for (const auto& [dep, expr] : a.components)
    if (!numeric_equal(expr, b.component(dep), box, n, tol, ++s)) return false;
  return true;
}

}  // namespace liesym
