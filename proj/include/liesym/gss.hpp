// The axisymmetric flux equation
//
//     u_xx + (a/x) u_x + u_yy = x^(2p) F(u) + G(u)
//
// (the a = -1, p = 1 instance is the Grad-Schlueter-Shafranov equation):
// equivalence transformations, the dilation symmetry classification cases,
// the k d/dx + x^p d/dy conditional reduction to u_ss = F(u), the energy
// quadrature integrator for that reduced equation, and the cylindrical
// u = x^4 worked solution with its pressure and current profiles.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "liesym/quadrature.hpp"
#include "liesym/solution.hpp"
#include "liesym/system.hpp"

namespace liesym {

struct GSSEquation {
  double a = -1.0;
  double p = 1.0;
  Expr F{0.0};  // flux functions, expressions in the symbol u
  Expr G{0.0};
};

inline EquationSystem gss_system(const GSSEquation& eq) {
  JetSpace space({"x", "y"}, {"u"}, 2);
  const Expr x = var("x"), u = var("u");
  const Expr rhs = simplify(pow(x, 2.0 * eq.p) * eq.F + eq.G);
  const Expr residual =
      simplify(space.d("u", "xx") + (eq.a / x) * space.d("u", "x") + space.d("u", "yy") - rhs);
  const Expr solve_uyy =
      simplify(rhs - space.d("u", "xx") - (eq.a / x) * space.d("u", "x"));
  EquationSystem sys{"flux equation", space, {residual}, {{"u_yy", solve_uyy}}, {}};
  SampleBox box;
  box.vars = {VarSpec::real("x", 0.2, 1.2), VarSpec::real("y", -1.0, 1.0),
              VarSpec::real("u", 0.2, 2.0)};
  for (const std::string& c : space.all_coordinates())
    if (c != "u") box.vars.push_back(VarSpec::real(c, -2.0, 2.0));
  sys.jet_box = box;
  return sys;
}

// ---------------------------------------------------------------------------
// equivalence transformations

struct EquivalenceTransform {
  enum Kind { ShiftU, ScaleU, ScaleXY } kind;
  double param;
};

inline GSSEquation apply_equivalence(const GSSEquation& eq, const EquivalenceTransform& t) {
  const Expr u = var("u");
  GSSEquation out = eq;
  switch (t.kind) {
    case EquivalenceTransform::ShiftU:
      // u -> u + k; the flux functions are re-read at the shifted argument
      out.F = simplify(substitute(eq.F, "u", u - t.param));
      out.G = simplify(substitute(eq.G, "u", u - t.param));
      break;
    case EquivalenceTransform::ScaleU:
      if (t.param == 0.0) throw std::invalid_argument("scale_u requires alpha != 0");
      out.F = simplify(t.param * substitute(eq.F, "u", u / t.param));
      out.G = simplify(t.param * substitute(eq.G, "u", u / t.param));
      break;
    case EquivalenceTransform::ScaleXY:
      if (t.param == 0.0) throw std::invalid_argument("scale_xy requires alpha != 0");
      out.F = simplify(std::pow(t.param, -2.0 * (eq.p + 1.0)) * eq.F);
      out.G = simplify(std::pow(t.param, -2.0) * eq.G);
      break;
  }
  return out;
}

// image of a solution under the same transformation: if u solves eq, the
// returned function solves apply_equivalence(eq, t)
inline ClosedFormSolution transform_witness(const ClosedFormSolution& sol,
                                            const EquivalenceTransform& t) {
  ClosedFormSolution out = sol;
  Expr u = sol.component("u");
  switch (t.kind) {
    case EquivalenceTransform::ShiftU:
      u = simplify(u + t.param);
      break;
    case EquivalenceTransform::ScaleU:
      u = simplify(t.param * u);
      break;
    case EquivalenceTransform::ScaleXY: {
      const std::vector<std::pair<std::string, Expr>> shrink{
          {"x", var("x") / t.param}, {"y", var("y") / t.param}};
      u = simplify(substitute(u, shrink));
      for (VarSpec& v : out.domain.vars) {
        v.re.lo *= t.param;
        v.re.hi *= t.param;
      }
      break;
    }
  }
  out.components = {{"u", u}};
  out.provenance = sol.provenance + " (equivalence image)";
  return out;
}

// ---------------------------------------------------------------------------
// classification: the flux-function choices admitting a dilation symmetry

enum class ClassificationCase {
  PowerLaw,          // F = u^{1+(p+1)/q}, G = u^{1+1/q}, X = x dx + y dy - 2q u du
  ShiftedPowerLaw,   // the same family shifted: F = c1 (c+u)^..., G = c2 (c+u)^...
  Exponential,       // F = e^{(1+p)u}, G = e^u, X = x dx + y dy - 2 du
  PureDilation,      // p = -1, G = 0, any F: X = x dx + y dy
  NonlinearLaplace,  // a = p = 0, F = u^k: X = (k-1)(x dx + y dy) - 2u du
};

struct ClassifiedEquation {
  GSSEquation equation;
  GeneratorField symmetry;
};

struct ClassificationParams {
  double a = -1.0, p = 1.0;
  double q = 1.0;        // PowerLaw / ShiftedPowerLaw
  double c = 0.0, c1 = 1.0, c2 = 1.0;  // ShiftedPowerLaw
  double k = 3.0;        // NonlinearLaplace exponent
  std::optional<Expr> F; // PureDilation flux function
};

inline ClassifiedEquation classified_equation(ClassificationCase kind,
                                              const ClassificationParams& prm) {
  const Expr x = var("x"), y = var("y"), u = var("u");
  const std::vector<std::string> indep{"x", "y"}, dep{"u"};
  ClassifiedEquation out;
  switch (kind) {
    case ClassificationCase::PowerLaw: {
      if (prm.q == 0.0) throw std::invalid_argument("q must be nonzero");
      out.equation = {prm.a, prm.p, pow(u, 1.0 + (prm.p + 1.0) / prm.q),
                      pow(u, 1.0 + 1.0 / prm.q)};
      out.symmetry = make_field("dilation", indep, dep, {x, y}, {-2.0 * prm.q * u});
      break;
    }
    case ClassificationCase::ShiftedPowerLaw: {
      if (prm.q == 0.0) throw std::invalid_argument("q must be nonzero");
      out.equation = {prm.a, prm.p,
                      prm.c1 * pow(prm.c + u, 1.0 + (prm.p + 1.0) / prm.q),
                      prm.c2 * pow(prm.c + u, 1.0 + 1.0 / prm.q)};
      out.symmetry =
          make_field("shifted dilation", indep, dep, {x, y}, {-2.0 * prm.q * (prm.c + u)});
      break;
    }
    case ClassificationCase::Exponential: {
      out.equation = {prm.a, prm.p, exp((1.0 + prm.p) * u), exp(u)};
      out.symmetry = make_field("dilation-shift", indep, dep, {x, y}, {Expr(-2.0)});
      break;
    }
    case ClassificationCase::PureDilation: {
      out.equation = {prm.a, -1.0, prm.F.value_or(pow(u, 3.0)), Expr(0.0)};
      out.symmetry = make_field("pure dilation", indep, dep, {x, y}, {Expr(0.0)});
      break;
    }
    case ClassificationCase::NonlinearLaplace: {
      out.equation = {0.0, 0.0, pow(u, prm.k), Expr(0.0)};
      out.symmetry = make_field("laplace dilation", indep, dep,
                                {(prm.k - 1.0) * x, (prm.k - 1.0) * y}, {-2.0 * u});
      break;
    }
  }
  return out;
}

struct ClassificationReports {
  ResidualReport symmetry;            // the stated generator passes
  ResidualReport perturbed_generator; // expected to fail
  ResidualReport perturbed_exponent;  // expected to fail
};

inline ClassificationReports verify_classification_case(ClassificationCase kind,
                                                        const ClassificationParams& prm,
                                                        int samples, std::uint64_t seed,
                                                        double tol = 1e-9) {
  const ClassifiedEquation ce = classified_equation(kind, prm);
  ClassificationReports out;
  out.symmetry = infinitesimal_symmetry_check(ce.symmetry, gss_system(ce.equation), samples,
                                              seed, tol, "classified symmetry");

  // negative control 1: nudge the u-coefficient of the generator
  GeneratorField bent = ce.symmetry;
  bent.label += " (perturbed)";
  bent.zeta[0] = simplify(bent.zeta[0] + 0.1 * var("u") + 0.05);
  out.perturbed_generator = infinitesimal_symmetry_check(bent, gss_system(ce.equation), samples,
                                                         seed + 1, tol, "perturbed generator");

  // negative control 2: nudge the flux-function exponent
  GSSEquation offeq = ce.equation;
  offeq.F = simplify(offeq.F * pow(var("u"), 0.05));
  out.perturbed_exponent = infinitesimal_symmetry_check(ce.symmetry, gss_system(offeq), samples,
                                                        seed + 2, tol, "perturbed exponent");
  return out;
}

// ---------------------------------------------------------------------------
// conditional reduction: X = k d/dx + x^p d/dy, valid for a = -p != 0 and
// G = k^2 F, reduces the equation to u_ss = F(u) in the invariant variable
// s = x^(p+1)/(p+1) - k y   (p != -1),   s = ln x - k y   (p = -1).

inline Expr conditional_invariant_variable(double k, double p) {
  const Expr x = var("x"), y = var("y");
  if (p == -1.0) return simplify(ln(x) - k * y);
  return simplify(pow(x, p + 1.0) / (p + 1.0) - k * y);
}

struct ConditionalReduction {
  GSSEquation equation;      // with G = k^2 F bound
  Expr s;                    // invariant variable in (x, y)
  ResidualReport profile_ok; // phi'' - F(phi) on the s-range
  ClosedFormSolution lifted; // u(x,y) = phi(s(x,y))
};

inline ConditionalReduction conditional_reduction(double k, double p, double a, const Expr& F,
                                                  const Expr& phi /* in s */,
                                                  SampleBox xy_domain, Interval s_range,
                                                  int samples = 60,
                                                  std::uint64_t seed = kDefaultSeed,
                                                  double tol = 1e-9) {
  if (a != -p || p == 0.0)
    throw std::invalid_argument("the conditional symmetry requires a = -p != 0");
  ConditionalReduction out;
  out.equation = {a, p, F, simplify(k * k * F)};
  out.s = conditional_invariant_variable(k, p);
  const Expr ode_residual =
      simplify(differentiate(differentiate(phi, "s"), "s") - substitute(F, "u", phi));
  out.profile_ok = expression_zero_report(
      ode_residual, SampleBox{{VarSpec::real("s", s_range.lo, s_range.hi)}}, samples, seed, tol,
      "phi'' = F(phi)");
  out.lifted = {{"x", "y"},
                {{"u", simplify(substitute(phi, "s", out.s))}},
                std::move(xy_domain),
                "conditional reduction"};
  return out;
}

// ---------------------------------------------------------------------------
// energy quadrature for  u_ss = F(u),  u(0) = u0, u'(0) = p0:
//     (1/2) u'^2 = W(u) + E,   W(u) = integral of F from u0,  E = p0^2/2.
// The profile is computed by integrating ds = du / sqrt(2W + p0^2) along
// monotone branches, with a square-root substitution at turning points and
// mirror continuation through them.

class QuadratureProfileError : public std::runtime_error {
 public:
  explicit QuadratureProfileError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// 5-point Gauss-Legendre on [-1, 1]
inline double gauss5(const std::function<double(double)>& f, double a, double b) {
  static constexpr double xg[] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                  0.5384693101056831, 0.9061798459386640};
  static constexpr double wg[] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                  0.4786286704993665, 0.2369268850561891};
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) sum += wg[i] * f(mid + half * xg[i]);
  return half * sum;
}

}  // namespace detail

// Profile phi(s) of  u_ss = F(u),  u(0) = u0, u'(0) = p0, computed from the
// first integral.  Each monotone branch [u_a, u_b] is tabulated densely in
// the angle parameter of  u = mid + half*sin(theta), which removes the
// inverse-square-root endpoint singularity whether one end, both ends, or
// neither end is a turning point.  Across a turning point the autonomous,
// reversible equation continues by mirror reflection (branch switches are
// counted in turning_points()).
class QuadratureProfile {
 public:
  QuadratureProfile(Expr F, double u0, double p0, double s_max, int nodes_per_segment = 1024)
      : F_(simplify(std::move(F))), u0_(u0), p0_(p0), s_max_(s_max), nodes_(nodes_per_segment) {
    double dir;
    if (p0 != 0.0)
      dir = p0 > 0 ? 1.0 : -1.0;
    else {
      const double f0 = force(u0);
      if (f0 == 0.0) {
        constant_ = true;  // equilibrium
        return;
      }
      dir = f0 > 0 ? 1.0 : -1.0;
    }
    build(dir, p0 == 0.0);
  }

  double phi(double s) const {
    if (constant_) return u0_;
    return lookup(s).u;
  }

  double dphi(double s) const {
    if (constant_) return 0.0;
    const Point pt = lookup(s);
    return pt.dir * std::sqrt(std::max(0.0, pt.speed2));
  }

  int turning_points() const { return constant_ ? 0 : static_cast<int>(segments_.size()) - 1; }

 private:
  struct Segment {
    double dir;        // sign of u'(s)
    double mid, half;  // u(theta) = mid + half sin(theta), half signed
    std::vector<double> par;  // theta nodes, ascending from -pi/2 to pi/2
    std::vector<double> s;    // arc length at the node
    std::vector<double> w;    // potential W(u(node)) relative to u0
  };

  struct Point {
    double u, speed2, dir;
  };

  double force(double u) const { return evaluate_real(F_, {{"u", u}}); }

  static double u_at(const Segment& seg, double theta) {
    return seg.mid + seg.half * std::sin(theta);
  }

  // dW = F(u) du over one theta panel
  double dw_increment(const Segment& seg, double t0, double t1) const {
    return detail::gauss5(
        [&](double t) { return force(u_at(seg, t)) * seg.half * std::cos(t); }, t0, t1);
  }

  // ds over one theta panel, anchored at W(t0) = w0
  double ds_increment(const Segment& seg, double t0, double t1, double w0) const {
    auto w_at = [&](double t) { return w0 + dw_increment(seg, t0, t); };
    return detail::gauss5(
        [&](double t) {
          const double v2 = 2.0 * w_at(t) + p0_ * p0_;
          return seg.dir * seg.half * std::cos(t) / std::sqrt(std::max(v2, 1e-300));
        },
        t0, t1);
  }

  // tabulate one branch from (u_cur, w_cur) to u_end
  Segment tabulate(double dir, double u_cur, double u_end, double s_cur, double w_cur) const {
    Segment seg;
    seg.dir = dir;
    seg.mid = 0.5 * (u_cur + u_end);
    seg.half = 0.5 * (u_end - u_cur);
    constexpr double kHalfPi = std::numbers::pi / 2.0;
    seg.par.push_back(-kHalfPi);
    seg.s.push_back(s_cur);
    seg.w.push_back(w_cur);
    for (int i = 1; i <= nodes_; ++i) {
      const double t0 = seg.par.back();
      const double t1 = -kHalfPi + std::numbers::pi * i / nodes_;
      seg.s.push_back(seg.s.back() + ds_increment(seg, t0, t1, seg.w.back()));
      seg.w.push_back(seg.w.back() + dw_increment(seg, t0, t1));
      seg.par.push_back(t1);
    }
    return seg;
  }

  void build(double dir, bool at_turn) {
    double s_cur = 0.0, u_cur = u0_, w_cur = 0.0;
    for (int branch = 0; branch < 24 && s_cur < s_max_; ++branch) {
      // look ahead for the first root of speed2(u) = 2W + p0^2 in direction dir
      double u_turn = std::numeric_limits<double>::quiet_NaN();
      {
        double u_prev = u_cur + dir * (at_turn ? 1e-9 : 0.0);
        double w_prev = w_cur + (at_turn ? dir * 1e-9 * force(u_cur) : 0.0);
        double step = 1e-3;
        for (int probe = 0; probe < 4000; ++probe) {
          const double u_next = u_prev + dir * step;
          const double w_next =
              w_prev + detail::gauss5([&](double u) { return force(u); }, u_prev, u_next);
          if (2.0 * w_next + p0_ * p0_ <= 0.0) {
            double lo = u_prev, hi = u_next, wlo = w_prev;
            for (int it = 0; it < 100; ++it) {
              const double mid = 0.5 * (lo + hi);
              const double wm =
                  wlo + detail::gauss5([&](double u) { return force(u); }, lo, mid);
              if (2.0 * wm + p0_ * p0_ > 0.0) {
                lo = mid;
                wlo = wm;
              } else {
                hi = mid;
              }
            }
            u_turn = 0.5 * (lo + hi);
            break;
          }
          u_prev = u_next;
          w_prev = w_next;
          if (std::abs(u_prev - u_cur) > 80.0) break;  // no turn within range
          step = std::min(0.05, step * 1.25);
        }
      }

      const bool has_turn = !std::isnan(u_turn);
      Segment seg;
      if (has_turn) {
        seg = tabulate(dir, u_cur, u_turn, s_cur, w_cur);
      } else {
        // unbounded branch: grow the span until s_max is covered
        double span = 1.0;
        for (int grow = 0;; ++grow) {
          seg = tabulate(dir, u_cur, u_cur + dir * span, s_cur, w_cur);
          if (seg.s.back() >= s_max_) break;
          if (grow > 60 || span > 1e6)
            throw QuadratureProfileError("profile escapes before reaching s_max");
          span *= 2.0;
        }
      }
      segments_.push_back(seg);
      s_cur = seg.s.back();
      w_cur = seg.w.back();
      u_cur = u_at(seg, seg.par.back());
      if (!has_turn) break;
      dir = -dir;
      at_turn = true;
    }
    if (s_cur < s_max_) throw QuadratureProfileError("too many turning points before s_max");
  }

  Point lookup(double s) const {
    if (s < -1e-12 || s > s_max_ + 1e-9)
      throw QuadratureProfileError("query outside the integrated range");
    const Segment* seg = &segments_.back();
    for (const Segment& cand : segments_)
      if (s <= cand.s.back() + 1e-12) {
        seg = &cand;
        break;
      }
    const auto it = std::upper_bound(seg->s.begin(), seg->s.end(), s);
    std::size_t i = it == seg->s.begin() ? 0 : (it - seg->s.begin() - 1);
    if (i + 1 >= seg->s.size()) i = seg->s.size() - 2;
    // bisect theta inside the bracketing panel
    double lo = seg->par[i], hi = seg->par[i + 1];
    const double s_lo = seg->s[i], w_lo = seg->w[i];
    for (int iter = 0; iter < 80; ++iter) {
      const double mid = 0.5 * (lo + hi);
      const double sm = s_lo + ds_increment(*seg, seg->par[i], mid, w_lo);
      if (sm < s)
        lo = mid;
      else
        hi = mid;
    }
    const double theta = 0.5 * (lo + hi);
    const double w = w_lo + dw_increment(*seg, seg->par[i], theta);
    return {u_at(*seg, theta), 2.0 * w + p0_ * p0_, seg->dir};
  }

  Expr F_;
  double u0_, p0_, s_max_;
  int nodes_;
  bool constant_ = false;
  std::vector<Segment> segments_;
};

// ---------------------------------------------------------------------------
// worked cylindrical solution: q = -2, F = c1, G = (8 - c1) u^(1/2) on the
// a = -1, p = 1 equation give u = x^4, with pressure and total-current
// profiles vanishing at the wall x0.

struct WorkedSolution {
  GSSEquation equation;
  ClosedFormSolution solution;  // u = x^4 on 0 < x < x0
  Expr pressure;                // (c1/4pi)(x0^4 - x^4)
  Expr current_squared;         // [4(8-c1)/3](x0^6 - x^6)
  ResidualReport identity;      // polynomial identity residual
};

// physical profile export: (x, u, pressure, I^2) across the column
inline void write_worked_profile(std::ostream& os, const struct WorkedSolution& w, int rows);

inline WorkedSolution worked_cylindrical_solution(double c1, double x0,
                                                  std::uint64_t seed = kDefaultSeed) {
  const Expr x = var("x"), u = var("u");
  WorkedSolution out;
  out.equation = {-1.0, 1.0, Expr(c1), (8.0 - c1) * sqrt(u)};
  out.solution = {{"x", "y"},
                  {{"u", pow(x, 4.0)}},
                  SampleBox{{VarSpec::real("x", 0.05, x0), VarSpec::real("y", -1.0, 1.0)}},
                  "cylindrical u=x^4"};
  out.pressure = simplify((c1 / (4.0 * std::numbers::pi)) * (std::pow(x0, 4.0) - pow(x, 4.0)));
  out.current_squared =
      simplify((4.0 * (8.0 - c1) / 3.0) * (std::pow(x0, 6.0) - pow(x, 6.0)));
  out.identity = solution_residual_report(out.solution, gss_system(out.equation), 100, seed,
                                          1e-12, "u = x^4 identity");
  return out;
}

inline void write_worked_profile(std::ostream& os, const WorkedSolution& w, int rows) {
  const Interval xr = w.solution.domain.vars.at(0).re;
  os << "x,u,pressure,current_squared\n";
  for (int i = 0; i < rows; ++i) {
    const double x = xr.lo + (xr.hi - xr.lo) * i / (rows - 1);
    const EvaluationPoint pt{{"x", x}};
    os << format_double(x) << ',' << format_double(evaluate_real(w.solution.component("u"), pt))
       << ',' << format_double(evaluate_real(w.pressure, pt)) << ','
       << format_double(evaluate_real(w.current_squared, pt)) << '\n';
  }
}

}  // namespace liesym
