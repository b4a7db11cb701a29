// The coupled vortex system for the magnetic potential u(x,y,t) and electric
// potential v(x,y,t), in the compact two-signed form
//
//     D_t( u - lap u +- lap v ) + { v +- u , u - lap u +- lap v } = 0,
//
// with {f,g} = f_x g_y - g_x f_y.  This header owns everything specific to
// that system: the named symmetry generators and their flows, canonical
// (symmetry-adapted) coordinates, invariant-solution families, the scaling
// partial symmetry with its reduced three-equation form, and the truncated
// variants of the system.
#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "liesym/solution.hpp"
#include "liesym/system.hpp"

namespace liesym {

namespace detail {

struct VortexParts {
  JetSpace space{{"x", "y", "t"}, {"u", "v"}, 3};
  Expr u, v, w_plus, w_minus, b_plus, b_minus;
  VortexParts() {
    u = var("u");
    v = var("v");
    w_plus = simplify(u - space.laplacian(u) + space.laplacian(v));
    w_minus = simplify(u - space.laplacian(u) - space.laplacian(v));
    b_plus = space.bracket(v + u, w_plus);
    b_minus = space.bracket(v - u, w_minus);
  }
};

inline SampleBox vortex_jet_box(const JetSpace& space) {
  SampleBox box = default_jet_box(space);
  box.admissible = [](const EvaluationPoint& pt) {
    const double x = pt.at("x").real(), y = pt.at("y").real();
    return std::abs(x) > 0.05 && std::hypot(x, y) > 0.05;
  };
  return box;
}

}  // namespace detail

inline EquationSystem vortex_system() {
  detail::VortexParts p;
  const Expr dplus = simplify(p.space.total_derivative(p.w_plus, 2) + p.b_plus);
  const Expr dminus = simplify(p.space.total_derivative(p.w_minus, 2) + p.b_minus);
  // the two time-derivative leaders appear linearly with unit coefficient:
  // solve the sum for u_xxt and the difference for v_xxt
  const Expr u_xxt = simplify(var("u_t") - var("u_yyt") + 0.5 * (p.b_plus + p.b_minus));
  const Expr v_xxt = simplify(-var("v_yyt") - 0.5 * (p.b_plus - p.b_minus));
  EquationSystem sys{"vortex",
                     p.space,
                     {dplus, dminus},
                     {{"u_xxt", u_xxt}, {"v_xxt", v_xxt}},
                     detail::vortex_jet_box(p.space)};
  return sys;
}

// ---------------------------------------------------------------------------
// generators

// Smooth time functions parameterizing the infinite-dimensional part of the
// algebra; expressions in the single variable t.
struct TimeFunctions {
  Expr A{0.0}, B{0.0}, H{0.0};
};

inline GeneratorField vortex_generator(const std::string& name, TimeFunctions tf = {}) {
  const Expr x = var("x"), y = var("y"), t = var("t");
  const Expr zero{0.0}, one{1.0};
  const std::vector<std::string> indep{"x", "y", "t"}, dep{"u", "v"};
  if (name == "X1") return make_field("X1", indep, dep, {zero, zero, one}, {zero, zero});
  if (name == "X2") return make_field("X2", indep, dep, {y, -x, zero}, {zero, zero});
  if (name == "X3") return make_field("X3", indep, dep, {zero, zero, zero}, {one, zero});
  if (name == "X4")
    return make_field("X4", indep, dep, {-t * y, t * x, zero},
                      {zero, 0.5 * (sq(x) + sq(y))});
  if (name == "XH")
    return make_field("XH", indep, dep, {zero, zero, zero}, {zero, tf.H});
  if (name == "XAB") {
    const Expr At = simplify(differentiate(tf.A, "t"));
    const Expr Bt = simplify(differentiate(tf.B, "t"));
    return make_field("XAB", indep, dep, {tf.A, tf.B, zero}, {zero, simplify(x * Bt - y * At)});
  }
  throw std::invalid_argument("unknown generator '" + name + "'");
}

// X_H~ with H~ = (A D - B C)_t, the bracket of two (A,B)-type generators.
inline Expr ab_bracket_time_function(const Expr& A, const Expr& B, const Expr& C,
                                     const Expr& D) {
  return simplify(differentiate(simplify(A * D - B * C), "t"));
}

// ---------------------------------------------------------------------------
// flows

// moving-frame transform: u(x-A, y-B, t) with the induced electric term
// x B_t - y A_t - (A B_t - A_t B)/2.
inline ClosedFormSolution moving_frame_transform(const ClosedFormSolution& sol, const Expr& A,
                                                 const Expr& B) {
  const Expr x = var("x"), y = var("y");
  const Expr At = simplify(differentiate(A, "t")), Bt = simplify(differentiate(B, "t"));
  const std::vector<std::pair<std::string, Expr>> shift{{"x", x - A}, {"y", y - B}};
  ClosedFormSolution out = sol;
  out.provenance = sol.provenance + " (moving frame)";
  for (auto& [dep, expr] : out.components) {
    if (dep == "u")
      expr = simplify(substitute(expr, shift));
    else if (dep == "v")
      expr = simplify(x * Bt - y * At - 0.5 * (A * Bt - At * B) + substitute(expr, shift));
  }
  return out;
}

// rotating-frame transform with angular velocity lambda: rotate (x,y) by
// lambda*t inside both components and add lambda*(x^2+y^2)/2 to v.
inline ClosedFormSolution rotating_frame_transform(const ClosedFormSolution& sol, double lambda) {
  const Expr x = var("x"), y = var("y"), t = var("t");
  const Expr c = cos(lambda * t), s = sin(lambda * t);
  const std::vector<std::pair<std::string, Expr>> rot{{"x", x * c + y * s},
                                                      {"y", -(x * s) + y * c}};
  ClosedFormSolution out = sol;
  out.provenance = sol.provenance + " (rotating frame)";
  for (auto& [dep, expr] : out.components) {
    expr = simplify(substitute(expr, rot));
    if (dep == "v") expr = simplify(expr + lambda * 0.5 * (sq(x) + sq(y)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// canonical (symmetry-adapted) coordinates for X_(A,B)

struct CanonicalChart {
  Expr A, B;     // in t
  Expr s, w, Q;  // in x, y, t
};

inline CanonicalChart canonical_chart(const Expr& A, const Expr& B) {
  const Expr x = var("x"), y = var("y");
  const Expr At = simplify(differentiate(A, "t")), Bt = simplify(differentiate(B, "t"));
  const Expr n2 = simplify(sq(A) + sq(B));
  CanonicalChart chart;
  chart.A = A;
  chart.B = B;
  chart.s = simplify(B * x - A * y);
  chart.w = simplify((A * x + B * y) / n2);
  chart.Q = simplify((0.5 / n2) *
                     ((At * B + A * Bt) * (sq(x) - sq(y)) - 2.0 * x * y * (A * At - B * Bt)));
  return chart;
}

class ReducedRelationError : public std::runtime_error {
 public:
  explicit ReducedRelationError(const std::string& what) : std::runtime_error(what) {}
};

// invariant-chart export: (s, w, t) at the grid points of an (x, y) slice
inline void write_chart_grid(std::ostream& os, const CanonicalChart& chart, double x0, double x1,
                             int nx, double y0, double y1, int ny, double t_value) {
  os << "s,w,t\n";
  for (int j = 0; j < ny; ++j) {
    const double y = y0 + (y1 - y0) * j / (ny - 1);
    for (int i = 0; i < nx; ++i) {
      const double x = x0 + (x1 - x0) * i / (nx - 1);
      const EvaluationPoint pt{{"x", x}, {"y", y}, {"t", t_value}};
      os << format_double(evaluate_real(chart.s, pt)) << ','
         << format_double(evaluate_real(chart.w, pt)) << ',' << format_double(t_value) << '\n';
    }
  }
}

// invariant solutions u = U0(s,t), v = Q + V0(s,t).  The inputs must satisfy
// the reduced relations:  U0 - (A^2+B^2) U0_ss and (A^2+B^2) V0_ss are
// functions of s alone (their t-derivatives vanish identically).
inline ClosedFormSolution canonical_reduction(const Expr& A, const Expr& B, const Expr& U0,
                                              const Expr& V0, SampleBox domain,
                                              std::uint64_t seed = kDefaultSeed) {
  const CanonicalChart chart = canonical_chart(A, B);
  const Expr n2 = simplify(sq(A) + sq(B));
  SampleBox st_box{{VarSpec::real("s", -1.0, 1.0), VarSpec::real("t", 0.2, 2.0)}};
  const Expr lhs_u = simplify(U0 - n2 * differentiate(differentiate(U0, "s"), "s"));
  const Expr lhs_v = simplify(n2 * differentiate(differentiate(V0, "s"), "s"));
  if (!numeric_equal(simplify(differentiate(lhs_u, "t")), Expr(0.0), st_box, 40, 1e-10, seed))
    throw ReducedRelationError("U0 - (A^2+B^2) U0_ss depends on t");
  if (!numeric_equal(simplify(differentiate(lhs_v, "t")), Expr(0.0), st_box, 40, 1e-10, seed))
    throw ReducedRelationError("(A^2+B^2) V0_ss depends on t");

  ClosedFormSolution out;
  out.indep = {"x", "y", "t"};
  out.components = {{"u", simplify(substitute(U0, "s", chart.s))},
                    {"v", simplify(chart.Q + substitute(V0, "s", chart.s))}};
  out.domain = std::move(domain);
  out.provenance = "canonical reduction";
  return out;
}

// ---------------------------------------------------------------------------
// rotation-invariant solutions u = U0(r,t), v = (r^2/2t) theta + V0(r,t)

struct X4InvariantResult {
  ResidualReport u_equation;  // third-order linear equation for U0
  ResidualReport v_equation;  // third-order linear equation for V0
  ClosedFormSolution solution;
};

// residual of the linear equation satisfied by U0(r,t)
inline Expr x4_u_equation(const Expr& U0) {
  const Expr r = var("r"), t = var("t");
  auto dr = [](const Expr& e) { return simplify(differentiate(e, "r")); };
  auto dt = [](const Expr& e) { return simplify(differentiate(e, "t")); };
  const Expr Ur = dr(U0), Urr = dr(dr(U0)), Urrr = dr(dr(dr(U0)));
  const Expr Ut = dt(U0), Urt = dt(dr(U0)), Urrt = dt(dr(dr(U0)));
  return simplify(sq(r) * Urrr - 2.0 * r * t * Urrt + r * Urr - 2.0 * t * Urt - sq(r) * Ur +
                  2.0 * r * t * Ut + 3.0 * Ur);
}

// residual of the linear equation satisfied by V0(r,t)
inline Expr x4_v_equation(const Expr& V0) {
  const Expr r = var("r"), t = var("t");
  auto dr = [](const Expr& e) { return simplify(differentiate(e, "r")); };
  auto dt = [](const Expr& e) { return simplify(differentiate(e, "t")); };
  const Expr Vr = dr(V0), Vrr = dr(dr(V0)), Vrrr = dr(dr(dr(V0)));
  const Expr Vrt = dt(dr(V0)), Vrrt = dt(dr(dr(V0)));
  return simplify(2.0 * r * t * Vrrt - sq(r) * Vrrr + 2.0 * t * Vrt - r * Vrr + 5.0 * Vr);
}

// default cut-plane box: x bounded away from the negative axis, t away from 0
inline SampleBox cut_plane_box() {
  return SampleBox{{VarSpec::real("x", 0.3, 1.5), VarSpec::real("y", -1.0, 1.0),
                    VarSpec::real("t", 0.2, 2.0)}};
}

inline X4InvariantResult x4_invariant_solution(const Expr& U0, const Expr& V0,
                                               SampleBox domain = cut_plane_box(),
                                               int samples = 100,
                                               std::uint64_t seed = kDefaultSeed,
                                               double tol = 1e-9) {
  SampleBox rt_box{{VarSpec::real("r", 0.3, 1.5), VarSpec::real("t", 0.2, 2.0)}};
  X4InvariantResult out{
      expression_zero_report(x4_u_equation(U0), rt_box, samples, seed, tol, "U0 linear equation"),
      expression_zero_report(x4_v_equation(V0), rt_box, samples, seed + 1, tol,
                             "V0 linear equation"),
      {}};
  const Expr x = var("x"), y = var("y"), t = var("t");
  const Expr r_xy = sqrt(sq(x) + sq(y));
  const Expr theta = atan2(y, x);
  out.solution.indep = {"x", "y", "t"};
  out.solution.components = {
      {"u", simplify(substitute(U0, "r", r_xy))},
      {"v", simplify((sq(r_xy) / (2.0 * t)) * theta + substitute(V0, "r", r_xy))}};
  out.solution.domain = std::move(domain);
  out.solution.provenance = "rotation-invariant";
  return out;
}

// ---------------------------------------------------------------------------
// solutions invariant under d/dt + X_H and d/dt + X_(A,B)

struct CombinedAnsatzResult {
  std::vector<ResidualReport> invariance;  // characteristic conditions
  std::vector<ResidualReport> reduced;     // reduced-system conditions (first kind)
  ClosedFormSolution solution;
};

// first kind: u = U(x,y), v = T(t) + V(x,y) with H = T_t; U, V must satisfy
// {U - lap U, V} = {U, lap V} and {U, lap U} = {V, lap V}.
inline CombinedAnsatzResult combined_time_shift_ansatz(const Expr& U, const Expr& V,
                                                       const Expr& T, SampleBox domain,
                                                       int samples = 60,
                                                       std::uint64_t seed = kDefaultSeed,
                                                       double tol = 1e-9) {
  auto lap2 = [](const Expr& e) {
    return simplify(differentiate(differentiate(e, "x"), "x") +
                    differentiate(differentiate(e, "y"), "y"));
  };
  auto br2 = [](const Expr& f, const Expr& g) {
    return simplify(differentiate(f, "x") * differentiate(g, "y") -
                    differentiate(g, "x") * differentiate(f, "y"));
  };
  CombinedAnsatzResult out;
  out.solution.indep = {"x", "y", "t"};
  out.solution.components = {{"u", simplify(U)}, {"v", simplify(T + V)}};
  out.solution.domain = domain;
  out.solution.provenance = "time-shift invariant";

  // invariance characteristics: u_t = 0 and v_t = H = T_t
  const Expr H = simplify(differentiate(T, "t"));
  const Expr qu = simplify(-differentiate(out.solution.component("u"), "t"));
  const Expr qv = simplify(H - differentiate(out.solution.component("v"), "t"));
  out.invariance.push_back(
      expression_zero_report(qu, domain, samples, seed, tol, "characteristic u"));
  out.invariance.push_back(
      expression_zero_report(qv, domain, samples, seed + 1, tol, "characteristic v"));

  SampleBox xy{{VarSpec::real("x", -1, 1), VarSpec::real("y", -1, 1)}};
  out.reduced.push_back(expression_zero_report(simplify(br2(simplify(U - lap2(U)), V) - br2(U, lap2(V))),
                                               xy, samples, seed + 2, tol,
                                               "{U - lap U, V} = {U, lap V}"));
  out.reduced.push_back(expression_zero_report(simplify(br2(U, lap2(U)) - br2(V, lap2(V))), xy,
                                               samples, seed + 3, tol,
                                               "{U, lap U} = {V, lap V}"));
  return out;
}

// second kind: u = U(x-alpha, y-beta),
// v = (x-alpha) B - (y-beta) A + alpha B - beta A + V(x-alpha, y-beta),
// where A = alpha_t, B = beta_t.
inline CombinedAnsatzResult combined_moving_ansatz(const Expr& alpha, const Expr& beta,
                                                   const Expr& U, const Expr& V,
                                                   SampleBox domain, int samples = 60,
                                                   std::uint64_t seed = kDefaultSeed,
                                                   double tol = 1e-9) {
  const Expr x = var("x"), y = var("y");
  const Expr A = simplify(differentiate(alpha, "t")), B = simplify(differentiate(beta, "t"));
  const Expr At = simplify(differentiate(A, "t")), Bt = simplify(differentiate(B, "t"));
  const std::vector<std::pair<std::string, Expr>> shift{{"x", x - alpha}, {"y", y - beta}};

  CombinedAnsatzResult out;
  out.solution.indep = {"x", "y", "t"};
  const Expr u = simplify(substitute(U, shift));
  const Expr v = simplify((x - alpha) * B - (y - beta) * A + alpha * B - beta * A +
                          substitute(V, shift));
  out.solution.components = {{"u", u}, {"v", v}};
  out.solution.domain = std::move(domain);
  out.solution.provenance = "moving-frame invariant";

  // characteristics of d/dt + X_(A,B)
  const Expr qu = simplify(-(differentiate(u, "t") + A * differentiate(u, "x") +
                             B * differentiate(u, "y")));
  const Expr qv = simplify(x * Bt - y * At - (differentiate(v, "t") + A * differentiate(v, "x") +
                                              B * differentiate(v, "y")));
  out.invariance.push_back(
      expression_zero_report(qu, out.solution.domain, samples, seed, tol, "characteristic u"));
  out.invariance.push_back(
      expression_zero_report(qv, out.solution.domain, samples, seed + 1, tol,
                             "characteristic v"));
  return out;
}

// ---------------------------------------------------------------------------
// the contact conditional symmetry u_y d/du + v_x d/dv

inline GeneratorField contact_conditional_symmetry() {
  return make_field("u_y*d/du + v_x*d/dv", {"x", "y", "t"}, {"u", "v"},
                    {Expr(0.0), Expr(0.0), Expr(0.0)}, {var("u_y"), var("v_x")},
                    /*contact=*/true);
}

struct ConditionalSymmetryResult {
  ResidualReport system;             // the candidate solves the vortex system
  ResidualReport invariant_surface;  // zeta_a - xi_i d_i u_a vanishes on it
};

// Direct substitution of a candidate family into the system enlarged by the
// invariant-surface conditions of g; contact coefficients are evaluated on
// the candidate's own jet.
inline ConditionalSymmetryResult conditional_symmetry_check(const GeneratorField& g,
                                                            const EquationSystem& sys,
                                                            const ClosedFormSolution& sol,
                                                            int samples, std::uint64_t seed,
                                                            double tol = 1e-9) {
  ConditionalSymmetryResult out;
  out.system = solution_residual_report(sol, sys, samples, seed, tol,
                                        sol.provenance + ": system residual");

  const auto jet = solution_jet(sol, sys.space);
  std::vector<std::pair<std::string, Expr>> jet_subst(jet.begin(), jet.end());
  ResidualReport rep;
  rep.check = sol.provenance + ": invariant-surface conditions";
  rep.seed = seed + 1;
  rep.tolerance = tol;
  std::vector<Expr> characteristics;
  for (std::size_t a = 0; a < g.dep.size(); ++a) {
    Expr q = substitute(g.zeta[a], jet_subst);
    for (std::size_t i = 0; i < g.indep.size(); ++i)
      q = q - substitute(g.xi[i], jet_subst) *
                  differentiate(sol.component(g.dep[a]), g.indep[i]);
    characteristics.push_back(simplify(q));
  }
  std::mt19937_64 rng(rep.seed);
  for (int i = 0; i < samples; ++i) {
    SampleStats stats;
    const EvaluationPoint pt = sample_point(sol.domain, rng, &stats);
    rep.resampled += stats.resampled;
    double worst = 0.0;
    for (const Expr& q : characteristics) worst = std::max(worst, scaled_residual(q, pt));
    rep.add(worst, pt);
  }
  rep.finalize();
  out.invariant_surface = rep;
  return out;
}

// The wave-channel family found from the contact conditional symmetry:
// one component carries a propagating profile in x - T(t), the other a
// y-channel, with a drift term -T_t y in the electric potential.  The
// family solves the system exactly when the exponential rate and the wave
// number satisfy rate^2 - wavenumber^2 = 1.
enum class WaveChannelKind {
  SineWave,        // u = sin(k(x - T)),   v = exp(kappa y) - T_t y
  ExponentialWave, // u = exp(kappa(x - T)), v = sin(k y) - T_t y
};

inline ClosedFormSolution wave_channel_solution(WaveChannelKind kind, double wavenumber,
                                                double rate, const Expr& T) {
  const Expr x = var("x"), y = var("y");
  const Expr Tt = simplify(differentiate(T, "t"));
  ClosedFormSolution sol;
  sol.indep = {"x", "y", "t"};
  if (kind == WaveChannelKind::SineWave) {
    sol.components = {{"u", simplify(sin(wavenumber * (x - T)))},
                      {"v", simplify(exp(rate * y) - Tt * y)}};
    sol.provenance = "wave channel (sine wave)";
  } else {
    sol.components = {{"u", simplify(exp(rate * (x - T)))},
                      {"v", simplify(sin(wavenumber * y) - Tt * y)}};
    sol.provenance = "wave channel (exponential wave)";
  }
  sol.domain = SampleBox{{VarSpec::real("x", -1.0, 1.0), VarSpec::real("y", -1.0, 1.0),
                          VarSpec::real("t", 0.2, 1.5)}};
  return sol;
}

// ---------------------------------------------------------------------------
// the scaling partial symmetry u d/du

inline GeneratorField scaling_partial_symmetry() {
  return make_field("u*d/du", {"x", "y", "t"}, {"u", "v"}, {Expr(0.0), Expr(0.0), Expr(0.0)},
                    {var("u"), Expr(0.0)});
}

// {u, lap u} as a jet expression
inline Expr uu_bracket() {
  detail::VortexParts p;
  return p.space.bracket(p.u, p.space.laplacian(p.u));
}

// {u, lap v} as a jet expression
inline Expr uv_bracket() {
  detail::VortexParts p;
  return p.space.bracket(p.u, p.space.laplacian(p.v));
}

namespace detail {

inline SolveRule solve_uu_bracket() {
  // {u, lap u} = u_x (u_xxy + u_yyy) - u_y (u_xxx + u_xyy) = 0  ->  u_yyy
  const Expr rhs = simplify(var("u_y") * (var("u_xxx") + var("u_xyy")) / var("u_x") -
                            var("u_xxy"));
  return {"u_yyy", rhs};
}

inline SolveRule solve_uv_bracket() {
  const Expr rhs = simplify(var("u_y") * (var("v_xxx") + var("v_xyy")) / var("u_x") -
                            var("v_xxy"));
  return {"v_yyy", rhs};
}

inline void require_ux_away_from_zero(SampleBox& box) {
  auto prev = box.admissible;
  box.admissible = [prev](const EvaluationPoint& pt) {
    if (prev && !prev(pt)) return false;
    return std::abs(pt.at("u_x").real()) > 0.1;
  };
}

}  // namespace detail

// The vortex system enlarged by its scaling-symmetry condition {u, lap u} = 0.
inline EquationSystem enlarged_vortex_system() {
  EquationSystem sys = vortex_system();
  sys.name = "vortex+{u,lap u}=0";
  sys.residuals.push_back(uu_bracket());
  // order matters: fix u_yyy first, the time leaders reference it
  std::vector<SolveRule> rules{detail::solve_uu_bracket()};
  for (SolveRule& r : sys.solve) rules.push_back(std::move(r));
  sys.solve = std::move(rules);
  detail::require_ux_away_from_zero(sys.jet_box);
  return sys;
}

struct PartialSymmetryResult {
  ResidualReport on_constrained_manifold;   // |X*(D)| on D=0 and {u,lap u}=0
  ResidualReport off_constraint_magnitude;  // |X*(D)| on D=0 alone (generic)
  ResidualReport enlarged_symmetry;         // exact symmetry of the enlarged system
  ResidualReport euler_recovery;            // v-equation reduces to the Euler form
};

inline PartialSymmetryResult partial_symmetry_check(int samples, std::uint64_t seed,
                                                    double tol = 1e-9) {
  const EquationSystem base = vortex_system();
  const EquationSystem enlarged = enlarged_vortex_system();
  const GeneratorField g = scaling_partial_symmetry();

  std::vector<Expr> xstar;
  for (const Expr& res : base.residuals)
    xstar.push_back(lie_derivative(g, res, base.space, residual_order(base)));

  PartialSymmetryResult out;

  {
    ResidualReport rep;
    rep.check = "X*(D) on the constrained manifold";
    rep.seed = seed;
    rep.tolerance = tol;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) {
      const EvaluationPoint pt = sample_on_manifold(enlarged, rng, &rep.resampled);
      double worst = 0.0;
      for (const Expr& e : xstar) worst = std::max(worst, scaled_residual(e, pt));
      rep.add(worst, pt);
    }
    rep.finalize();
    out.on_constrained_manifold = rep;
  }

  {
    ResidualReport rep;
    rep.check = "X*(D) without the bracket constraint";
    rep.seed = seed + 1;
    rep.tolerance = tol;  // expected to fail: X*(D) = -+2{u, lap u} there
    std::mt19937_64 rng(seed + 1);
    for (int i = 0; i < samples; ++i) {
      const EvaluationPoint pt = sample_on_manifold(base, rng, &rep.resampled);
      double worst = 0.0;
      for (const Expr& e : xstar) worst = std::max(worst, scaled_residual(e, pt));
      rep.add(worst, pt);
    }
    rep.finalize();
    out.off_constraint_magnitude = rep;
  }

  out.enlarged_symmetry =
      infinitesimal_symmetry_check(g, enlarged, samples, seed + 2, tol,
                                   "u*d/du exact on the enlarged system");

  // on {u, lap u} = 0 the v-equation decouples into D_t lap v + {v, lap v} = 0
  {
    detail::VortexParts p;
    const Expr lap_v = p.space.laplacian(p.v);
    const Expr euler = simplify(p.space.total_derivative(lap_v, 2) + p.space.bracket(p.v, lap_v));
    ResidualReport rep;
    rep.check = "Euler form of the v-equation on the constrained manifold";
    rep.seed = seed + 3;
    rep.tolerance = tol;
    std::mt19937_64 rng(seed + 3);
    for (int i = 0; i < samples; ++i) {
      const EvaluationPoint pt = sample_on_manifold(enlarged, rng, &rep.resampled);
      rep.add(scaled_residual(euler, pt), pt);
    }
    rep.finalize();
    out.euler_recovery = rep;
  }
  return out;
}

// ---------------------------------------------------------------------------
// truncated system: the {u, lap v} coupling removed from the first equation

inline EquationSystem truncated_vortex_system(bool append_uv_constraint = false,
                                              bool append_uu_constraint = false) {
  detail::VortexParts p;
  const Expr w = simplify(p.u - p.space.laplacian(p.u));
  const Expr lap_v = p.space.laplacian(p.v);
  const Expr eq1 = simplify(p.space.total_derivative(w, 2) + p.space.bracket(p.v, w));
  const Expr eq2 = simplify(p.space.total_derivative(lap_v, 2) -
                            p.space.bracket(p.u, p.space.laplacian(p.u)) +
                            p.space.bracket(p.v, lap_v));

  std::string name = "truncated vortex";
  std::vector<Expr> residuals{eq1, eq2};
  std::vector<SolveRule> rules;
  if (append_uu_constraint) {
    residuals.push_back(uu_bracket());
    rules.push_back(detail::solve_uu_bracket());
    name += " + {u,lap u}=0";
  }
  if (append_uv_constraint) {
    residuals.push_back(uv_bracket());
    rules.push_back(detail::solve_uv_bracket());
    name += " + {u,lap v}=0";
  }
  rules.push_back({"u_xxt", simplify(var("u_t") - var("u_yyt") + p.space.bracket(p.v, w))});
  rules.push_back({"v_xxt", simplify(-var("v_yyt") + p.space.bracket(p.u, p.space.laplacian(p.u)) -
                                     p.space.bracket(p.v, lap_v))});

  EquationSystem sys{std::move(name), p.space, std::move(residuals), std::move(rules),
                     detail::vortex_jet_box(p.space)};
  if (append_uv_constraint || append_uu_constraint)
    detail::require_ux_away_from_zero(sys.jet_box);
  return sys;
}

// ---------------------------------------------------------------------------
// elementary solutions of the reduced system u_t = {u,v}, lap u = A(u),
// lap v = B(u); all three are solutions of the full system as well

struct ElementaryEntry {
  ClosedFormSolution solution;
  Expr A_of_u, B_of_u;  // expressions in the symbol u
};

inline ElementaryEntry elementary_solution(const std::string& name) {
  const Expr x = var("x"), y = var("y"), t = var("t"), u = var("u");
  ElementaryEntry e;
  e.solution.indep = {"x", "y", "t"};
  if (name == "traveling_waves") {
    const double c1 = 1.0, c2 = 1.0, c3 = 0.0, k = 2.0;
    e.solution.components = {
        {"u", simplify(c1 * sin(k * (x - t)) + c2 * sin(k * (y - t)) + c3)},
        {"v", simplify(x - y)}};
    e.solution.domain = SampleBox{{VarSpec::real("x", -1, 1), VarSpec::real("y", -1, 1),
                                   VarSpec::real("t", 0.2, 2.0)}};
    e.A_of_u = simplify(-(k * k) * (u - c3));
    e.B_of_u = Expr(0.0);
  } else if (name == "spiral") {
    e.solution.components = {{"u", simplify(2.0 * t - atan2(y, x))},
                             {"v", simplify(sq(x) + sq(y))}};
    e.solution.domain = cut_plane_box();
    e.A_of_u = Expr(0.0);
    e.B_of_u = Expr(4.0);
  } else if (name == "shear") {
    e.solution.components = {{"u", simplify(tanh(y - t))}, {"v", x}};
    e.solution.domain = SampleBox{{VarSpec::real("x", -1, 1), VarSpec::real("y", -1, 1),
                                   VarSpec::real("t", 0.2, 2.0)}};
    e.A_of_u = simplify(-2.0 * u + 2.0 * pow(u, 3.0));
    e.B_of_u = Expr(0.0);
  } else {
    throw std::invalid_argument("unknown elementary solution '" + name + "'");
  }
  e.solution.provenance = "elementary:" + name;
  return e;
}

inline const std::vector<std::string>& elementary_solution_names() {
  static const std::vector<std::string> names{"traveling_waves", "spiral", "shear"};
  return names;
}

// checks the three reduced equations and the full system for one entry
inline std::vector<ResidualReport> elementary_solution_reports(const std::string& name,
                                                               int samples, std::uint64_t seed,
                                                               double tol = 1e-9) {
  const ElementaryEntry e = elementary_solution(name);
  const Expr& u = e.solution.component("u");
  const Expr& v = e.solution.component("v");
  auto lap2 = [](const Expr& f) {
    return simplify(differentiate(differentiate(f, "x"), "x") +
                    differentiate(differentiate(f, "y"), "y"));
  };
  const Expr br = simplify(differentiate(u, "x") * differentiate(v, "y") -
                           differentiate(v, "x") * differentiate(u, "y"));
  std::vector<ResidualReport> out;
  out.push_back(expression_zero_report(simplify(differentiate(u, "t") - br), e.solution.domain,
                                       samples, seed, tol, name + ": u_t = {u,v}"));
  out.push_back(expression_zero_report(simplify(lap2(u) - substitute(e.A_of_u, "u", u)),
                                       e.solution.domain, samples, seed + 1, tol,
                                       name + ": lap u = A(u)"));
  out.push_back(expression_zero_report(simplify(lap2(v) - substitute(e.B_of_u, "u", u)),
                                       e.solution.domain, samples, seed + 2, tol,
                                       name + ": lap v = B(u)"));
  out.push_back(solution_residual_report(e.solution, vortex_system(), samples, seed + 3, tol,
                                         name + ": full system"));
  return out;
}

}  // namespace liesym
