// Named verification suites: batteries of residual and identity checks over
// the Liouville catalog, the vortex system, and the flux-equation
// classification.  The CLI `verify` subcommand and the acceptance runner are
// both thin wrappers around these.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "liesym/gss.hpp"
#include "liesym/liouville.hpp"
#include "liesym/vortex.hpp"

namespace liesym {

struct SuiteConfig {
  std::uint64_t seed = kDefaultSeed;
  int samples = 100;  // per-check budget; jet checks use twice this
  double tol = 1e-9;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  nlohmann::ordered_json detail;

  static CheckResult from_report(const ResidualReport& rep) {
    return {rep.check, rep.pass, rep.to_json()};
  }
  // a residual report that is REQUIRED to fail loudly
  static CheckResult negative_control(const ResidualReport& rep, double floor = 1e-3) {
    CheckResult out{rep.check + " [negative control]", !rep.pass && rep.max_residual > floor,
                    rep.to_json()};
    out.detail["required_failure_floor"] = floor;
    return out;
  }
  static CheckResult from_bool(std::string name, bool pass,
                               nlohmann::ordered_json detail = {}) {
    return {std::move(name), pass, std::move(detail)};
  }
};

inline bool all_pass(const std::vector<CheckResult>& checks) {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

// ---------------------------------------------------------------------------

inline std::vector<CheckResult> liouville_suite(const SuiteConfig& cfg) {
  std::vector<CheckResult> out;
  const EquationSystem sys = liouville_system();

  // residuals and invariance characteristics across the whole catalog
  std::uint64_t seed = cfg.seed;
  for (const std::string& name : catalog_names()) {
    const CatalogEntry entry = catalog(name);
    const ClosedFormSolution sol = solution_from_gamma(entry.gf, /*verify=*/false);
    out.push_back(CheckResult::from_report(solution_residual_report(
        sol, sys, cfg.samples, ++seed, cfg.tol, "residual: " + name)));
    const InvarianceField inv = invariance_field_of(entry.gf);
    out.push_back(CheckResult::from_report(invariance_characteristic_report(
        inv.field, sol, cfg.samples, ++seed, cfg.tol, "invariance characteristic: " + name)));
  }

  // plane normalization: the finite-integral family and its value
  for (double k : {0.5, 1.0, 5.0}) {
    const NormalizationResult n =
        normalization_integral(catalog_solution("bennet", {{"k", k}}, false));
    nlohmann::ordered_json detail;
    detail["value"] = n.value;
    detail["error"] = n.error;
    detail["divergent"] = n.divergent;
    detail["target"] = 4.0 * std::numbers::pi;
    out.push_back(CheckResult::from_bool(
        "normalization: bennet k=" + format_double(k),
        !n.divergent && std::abs(n.value - 4.0 * std::numbers::pi) < 1e-6 && n.error < 1e-6,
        detail));
  }
  {
    const NormalizationResult n =
        normalization_integral(catalog_solution("harris", {}, false));
    out.push_back(CheckResult::from_bool("normalization: harris diverges", n.divergent));
  }

  // flow orbit of the plane-sheet solution under phi = z^2
  const CatalogEntry harris = catalog("harris");
  const Expr z = var("z");
  for (double lam : {0.0, 0.1, 0.3}) {
    const GeneratingFunction orbit =
        apply_symmetry_orbit(harris.gf, sq(z), lam, "orbit lambda=" + format_double(lam),
                             catalog("deformed_harris", {{"lambda", lam}}).gf.xy_domain);
    const ClosedFormSolution sol = solution_from_gamma(orbit, false);
    if (lam == 0.0) {
      const bool same = solutions_pointwise_equal(
          sol, solution_from_gamma(harris.gf, false),
          SampleBox{{VarSpec::real("x", -1, 1), VarSpec::real("y", -1, 1)}}, 50, 1e-12,
          ++seed);
      out.push_back(CheckResult::from_bool("orbit identity at lambda=0", same));
    } else {
      out.push_back(CheckResult::from_report(solution_residual_report(
          sol, sys, cfg.samples, ++seed, cfg.tol, "orbit residual lambda=" + format_double(lam))));
    }
  }

  // one-dimensional families of both equation variants
  for (const ResidualReport& rep : variant_equation_checks(cfg.seed + 100, cfg.samples, cfg.tol))
    out.push_back(CheckResult::from_report(rep));
  {
    ClosedFormSolution wrong{{"x", "y"},
                             {{"u", simplify(-ln(abs(sinh(var("x")))))}},
                             SampleBox{{VarSpec::real("x", 0.2, 2.0), VarSpec::real("y", -1, 1)}},
                             "sign control"};
    out.push_back(CheckResult::negative_control(solution_residual_report(
        wrong, sys, cfg.samples, cfg.seed + 101, cfg.tol, "variant solution on the unflipped equation")));
  }

  // beta-form and Mobius-gauge consistency spot checks
  {
    const SampleBox box{{VarSpec::real("x", -1, 1), VarSpec::real("y", -1, 1)}};
    const ClosedFormSolution via_beta =
        solution_from_beta(sq(z), box, "z^2", false);
    const GeneratingFunction gexp{"exp(z^2)", exp(sq(z)), box};
    out.push_back(CheckResult::from_bool(
        "beta-form matches gamma = exp(beta)",
        solutions_pointwise_equal(via_beta, solution_from_gamma(gexp, false), box, 50, 1e-10,
                                  cfg.seed + 102)));
    const SampleBox off{{VarSpec::real("x", 0.2, 1.2), VarSpec::real("y", 0.2, 1.2)}};
    const GeneratingFunction g{"z+2", z + 2.0, off};
    const GeneratingFunction ginv{"1/(z+2)", 1.0 / (z + 2.0), off};
    out.push_back(CheckResult::from_bool(
        "gauge invariance gamma vs 1/gamma",
        solutions_pointwise_equal(solution_from_gamma(g, false),
                                  solution_from_gamma(ginv, false), off, 50, 1e-10,
                                  cfg.seed + 103)));
  }
  return out;
}

// ---------------------------------------------------------------------------

inline std::vector<CheckResult> vortex_suite(const SuiteConfig& cfg) {
  std::vector<CheckResult> out;
  const EquationSystem sys = vortex_system();
  const Expr t = var("t");
  const int jet_samples = 2 * cfg.samples;

  // generator families, three time-function instances where applicable
  {
    std::vector<GeneratorField> fields = {
        vortex_generator("X1"), vortex_generator("X2"), vortex_generator("X3"),
        vortex_generator("X4"),
        vortex_generator("XH", {.H = Expr(1.0)}),
        vortex_generator("XH", {.H = t}),
        vortex_generator("XH", {.H = sin(t)}),
        vortex_generator("XAB", {.A = t, .B = Expr(1.0)}),
        vortex_generator("XAB", {.A = sq(t), .B = sin(t)}),
        vortex_generator("XAB", {.A = sin(t), .B = cos(t)}),
    };
    std::uint64_t seed = cfg.seed;
    int idx = 0;
    for (const GeneratorField& g : fields)
      out.push_back(CheckResult::from_report(infinitesimal_symmetry_check(
          g, sys, jet_samples, ++seed, cfg.tol,
          "generator " + std::to_string(++idx) + ": " + g.label)));
  }
  {
    const Expr x = var("x"), y = var("y");
    const std::vector<std::string> indep{"x", "y", "t"}, dep{"u", "v"};
    const std::vector<GeneratorField> rogues = {
        make_field("x d/dx", indep, dep, {x, Expr(0.0), Expr(0.0)}, {Expr(0.0), Expr(0.0)}),
        make_field("rotating-frame with flipped sign", indep, dep, {-t * y, t * x, Expr(0.0)},
                   {Expr(0.0), -0.5 * (sq(x) + sq(y))}),
        make_field("moving-frame with swapped drift", indep, dep, {t, Expr(1.0), Expr(0.0)},
                   {Expr(0.0), x}),
    };
    std::uint64_t seed = cfg.seed + 20;
    for (const GeneratorField& g : rogues)
      out.push_back(CheckResult::negative_control(
          infinitesimal_symmetry_check(g, sys, jet_samples, ++seed, cfg.tol, g.label)));
  }

  // commutator table at tolerance 1e-10
  {
    const SampleBox box{{VarSpec::real("x", -1, 1), VarSpec::real("y", -1, 1),
                         VarSpec::real("t", 0.2, 2.0), VarSpec::real("u", -2, 2),
                         VarSpec::real("v", -2, 2)}};
    const auto X1 = vortex_generator("X1");
    const auto X2 = vortex_generator("X2");
    const auto X3 = vortex_generator("X3");
    const auto X4 = vortex_generator("X4");
    const auto XH = vortex_generator("XH", {.H = sq(t)});
    const auto XAB = vortex_generator("XAB", {.A = sq(t), .B = sin(t)});
    const auto XCD = vortex_generator("XAB", {.A = sin(t), .B = cos(t)});
    auto eq = [&](const GeneratorField& a, const GeneratorField& b) {
      return fields_equal(a, b, box, 40, 1e-10, cfg.seed + 31);
    };
    auto zero = [&](const GeneratorField& a, const GeneratorField& b) {
      const GeneratorField c = commutator(a, b);
      for (const Expr& e : c.xi)
        if (!simplify(e).is_constant(0.0)) return false;
      for (const Expr& e : c.zeta)
        if (!simplify(e).is_constant(0.0)) return false;
      return true;
    };
    bool table = true;
    table &= eq(commutator(X1, X4), scale_field(X2, -1.0));
    table &= eq(commutator(X1, XH), vortex_generator("XH", {.H = 2.0 * t}));
    table &= eq(commutator(X1, XAB), vortex_generator("XAB", {.A = 2.0 * t, .B = cos(t)}));
    table &= eq(commutator(X2, XAB), vortex_generator("XAB", {.A = -sin(t), .B = sq(t)}));
    table &= eq(commutator(X4, XAB),
                scale_field(vortex_generator("XAB", {.A = -t * sin(t), .B = t * sq(t)}), -1.0));
    table &= eq(commutator(XAB, XCD),
                vortex_generator(
                    "XH", {.H = ab_bracket_time_function(sq(t), sin(t), sin(t), cos(t))}));
    out.push_back(CheckResult::from_bool("commutator table reproduced at 1e-10", table));

    bool zeros = zero(X1, X2) && zero(X1, X3) && zero(X2, X3) && zero(X2, X4) &&
                 zero(X3, X4) && zero(X3, XH) && zero(X3, XAB) && zero(XH, XCD);
    out.push_back(CheckResult::from_bool("unlisted pairs commute; the u-shift is central", zeros));

    const GeneratorField jacobi = add_fields(
        add_fields(commutator(commutator(X1, X2), X4), commutator(commutator(X2, X4), X1)),
        commutator(commutator(X4, X1), X2));
    bool jac = true;
    for (const Expr& e : jacobi.xi) jac &= simplify(e).is_constant(0.0);
    for (const Expr& e : jacobi.zeta) jac &= simplify(e).is_constant(0.0);
    out.push_back(CheckResult::from_bool("Jacobi identity on {X1, X2, X4}", jac));
  }

  // flow orbits of the static sheet equilibrium
  {
    ClosedFormSolution harris{{"x", "y", "t"},
                              {{"u", simplify(-ln(cosh(var("x"))))}, {"v", Expr(0.0)}},
                              SampleBox{{VarSpec::real("x", -1.5, 1.5),
                                         VarSpec::real("y", -1.5, 1.5),
                                         VarSpec::real("t", 0.2, 2.0)}},
                              "static sheet"};
    out.push_back(CheckResult::from_report(
        solution_residual_report(moving_frame_transform(harris, sin(t), cos(t)), sys,
                                 cfg.samples, cfg.seed + 41, cfg.tol, "moving-frame orbit")));
    out.push_back(CheckResult::from_report(
        solution_residual_report(rotating_frame_transform(harris, 0.5), sys, cfg.samples,
                                 cfg.seed + 42, cfg.tol, "rotating-frame orbit lambda=0.5")));
    out.push_back(CheckResult::from_bool(
        "rotating-frame identity at lambda=0",
        solutions_pointwise_equal(rotating_frame_transform(harris, 0.0), harris, harris.domain,
                                  50, 1e-12, cfg.seed + 43)));
  }

  // rotation-invariant families
  {
    const Expr r = var("r");
    std::uint64_t seed = cfg.seed + 50;
    for (int a : {1, 2, 3}) {
      const double b = (a * a - 2.0 * a - 4.0) / (2.0 * a);
      const X4InvariantResult res = x4_invariant_solution(sq(r) * t, pow(r, double(a)) * pow(t, b),
                                                          cut_plane_box(), cfg.samples, ++seed,
                                                          cfg.tol);
      out.push_back(CheckResult::from_bool(
          "rotation-invariant linear equations a=" + std::to_string(a),
          res.u_equation.pass && res.v_equation.pass,
          nlohmann::ordered_json{{"u_eq", res.u_equation.to_json()},
                                 {"v_eq", res.v_equation.to_json()}}));
      out.push_back(CheckResult::from_report(
          solution_residual_report(res.solution, sys, cfg.samples, ++seed, cfg.tol,
                                   "rotation-invariant reconstruction a=" + std::to_string(a))));
    }
  }

  // canonical reduction instances
  {
    const Expr s = var("s");
    const SampleBox domain{{VarSpec::real("x", -1, 1), VarSpec::real("y", -1, 1),
                            VarSpec::real("t", 0.3, 2.0)}};
    out.push_back(CheckResult::from_report(solution_residual_report(
        canonical_reduction(Expr(1.0), Expr(0.0), -ln(cosh(s)), Expr(0.0), domain), sys,
        cfg.samples, cfg.seed + 60, cfg.tol, "canonical reduction: static sheet")));
    out.push_back(CheckResult::from_report(solution_residual_report(
        canonical_reduction(cos(t), sin(t), sq(s), 0.5 * sq(s), domain), sys, cfg.samples,
        cfg.seed + 61, cfg.tol, "canonical reduction: rotating frame")));
  }

  // partial symmetry and the truncated system
  {
    const PartialSymmetryResult res = partial_symmetry_check(cfg.samples, cfg.seed + 70, cfg.tol);
    out.push_back(CheckResult::from_report(res.on_constrained_manifold));
    out.push_back(CheckResult::negative_control(res.off_constraint_magnitude));
    out.push_back(CheckResult::from_report(res.enlarged_symmetry));
    out.push_back(CheckResult::from_report(res.euler_recovery));
  }
  {
    std::vector<GeneratorField> fields = {
        vortex_generator("X1"), vortex_generator("X2"), vortex_generator("X3"),
        vortex_generator("X4"), vortex_generator("XH", {.H = sin(t)}),
        vortex_generator("XAB", {.A = sin(t), .B = cos(t)})};
    std::uint64_t seed = cfg.seed + 80;
    struct Variant {
      bool uv, uu;
      const char* label;
    };
    for (const Variant& v :
         {Variant{false, false, "plain"}, {true, false, "+{u,lap v}"},
          {false, true, "+{u,lap u}"}, {true, true, "+both"}}) {
      const EquationSystem tsys = truncated_vortex_system(v.uv, v.uu);
      bool all = true;
      double worst = 0.0;
      for (const GeneratorField& g : fields) {
        const ResidualReport rep = infinitesimal_symmetry_check(g, tsys, cfg.samples, ++seed,
                                                                cfg.tol);
        all &= rep.pass;
        worst = std::max(worst, rep.max_residual);
      }
      out.push_back(CheckResult::from_bool(
          std::string("truncated system (") + v.label + ") admits the full algebra", all,
          nlohmann::ordered_json{{"max_residual", worst}}));
    }
    out.push_back(CheckResult::negative_control(infinitesimal_symmetry_check(
        make_field("x d/dx", {"x", "y", "t"}, {"u", "v"},
                   {var("x"), Expr(0.0), Expr(0.0)}, {Expr(0.0), Expr(0.0)}),
        truncated_vortex_system(), cfg.samples, cfg.seed + 90, cfg.tol,
        "rogue field on the truncated system")));
  }

  // elementary solutions of the reduced three-equation system
  {
    std::uint64_t seed = cfg.seed + 95;
    for (const std::string& name : elementary_solution_names())
      for (const ResidualReport& rep :
           elementary_solution_reports(name, cfg.samples, seed += 10, cfg.tol))
        out.push_back(CheckResult::from_report(rep));
  }

  // the contact conditional symmetry and its wave-channel family
  {
    const GeneratorField g = contact_conditional_symmetry();
    const Expr T = sq(t);
    const double root2 = std::sqrt(2.0);
    const ConditionalSymmetryResult sine = conditional_symmetry_check(
        g, sys, wave_channel_solution(WaveChannelKind::SineWave, 1.0, root2, T), cfg.samples,
        cfg.seed + 130, cfg.tol);
    out.push_back(CheckResult::from_bool("wave channel (sine wave) solves system and surface",
                                         sine.system.pass && sine.invariant_surface.pass,
                                         sine.system.to_json()));
    const ConditionalSymmetryResult swapped = conditional_symmetry_check(
        g, sys, wave_channel_solution(WaveChannelKind::ExponentialWave, 1.0, root2, T),
        cfg.samples, cfg.seed + 131, cfg.tol);
    out.push_back(CheckResult::from_bool(
        "wave channel (exponential wave) solves system and surface",
        swapped.system.pass && swapped.invariant_surface.pass, swapped.system.to_json()));
    const ConditionalSymmetryResult broken = conditional_symmetry_check(
        g, sys, wave_channel_solution(WaveChannelKind::SineWave, 1.0, 1.0, T), cfg.samples,
        cfg.seed + 132, cfg.tol);
    out.push_back(CheckResult::negative_control(broken.system));
  }
  return out;
}

// ---------------------------------------------------------------------------

inline std::vector<CheckResult> gss_suite(const SuiteConfig& cfg) {
  std::vector<CheckResult> out;
  const Expr u = var("u"), s = var("s");

  // classification cases with negative controls
  {
    std::uint64_t seed = cfg.seed;
    ClassificationParams prm;
    prm.a = -1.0;
    prm.p = 1.0;
    prm.q = -2.0;
    const ClassificationReports a =
        verify_classification_case(ClassificationCase::PowerLaw, prm, cfg.samples, ++seed, cfg.tol);
    out.push_back(CheckResult::from_report(a.symmetry));
    out.push_back(CheckResult::negative_control(a.perturbed_generator));
    out.push_back(CheckResult::negative_control(a.perturbed_exponent));

    prm.q = 1.0;
    prm.c = 1.0;
    const ClassificationReports ap = verify_classification_case(
        ClassificationCase::ShiftedPowerLaw, prm, cfg.samples, ++seed, cfg.tol);
    out.push_back(CheckResult::from_report(ap.symmetry));
    out.push_back(CheckResult::negative_control(ap.perturbed_generator));

    const ClassificationReports b = verify_classification_case(
        ClassificationCase::Exponential, prm, cfg.samples, ++seed, cfg.tol);
    out.push_back(CheckResult::from_report(b.symmetry));
    out.push_back(CheckResult::negative_control(b.perturbed_generator));

    ClassificationParams prm_c;
    prm_c.a = 2.0;
    prm_c.F = pow(u, 3.0);
    const ClassificationReports c = verify_classification_case(
        ClassificationCase::PureDilation, prm_c, cfg.samples, ++seed, cfg.tol);
    out.push_back(CheckResult::from_report(c.symmetry));
    out.push_back(CheckResult::negative_control(c.perturbed_generator));
    out.push_back(CheckResult::from_bool("pure dilation holds for every flux function",
                                         c.perturbed_exponent.pass,
                                         c.perturbed_exponent.to_json()));

    ClassificationParams prm_k;
    prm_k.k = 3.0;
    const ClassificationReports nl = verify_classification_case(
        ClassificationCase::NonlinearLaplace, prm_k, cfg.samples, ++seed, cfg.tol);
    out.push_back(CheckResult::from_report(nl.symmetry));
    out.push_back(CheckResult::negative_control(nl.perturbed_generator));
  }

  // kernel: y-translation always admitted, x-translation only for a = 0
  {
    const GeneratorField ddy =
        make_field("d/dy", {"x", "y"}, {"u"}, {Expr(0.0), Expr(1.0)}, {Expr(0.0)});
    const GeneratorField ddx =
        make_field("d/dx", {"x", "y"}, {"u"}, {Expr(1.0), Expr(0.0)}, {Expr(0.0)});
    std::mt19937_64 rng(cfg.seed + 10);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    bool ddy_all = true;
    bool ddx_all_fail = true;
    for (int trial = 0; trial < 5; ++trial) {
      GSSEquation eq;
      eq.a = trial == 0 ? -1.0 : 0.3 + std::abs(coeff(rng));
      eq.p = trial == 0 ? 1.0 : coeff(rng);
      eq.F = simplify(coeff(rng) + coeff(rng) * u + coeff(rng) * sq(u));
      eq.G = simplify(coeff(rng) + coeff(rng) * u + coeff(rng) * pow(u, 3.0));
      ddy_all &= infinitesimal_symmetry_check(ddy, gss_system(eq), cfg.samples,
                                              cfg.seed + 11 + trial, cfg.tol)
                     .pass;
      ddx_all_fail &= !infinitesimal_symmetry_check(ddx, gss_system(eq), cfg.samples,
                                                    cfg.seed + 16 + trial, cfg.tol)
                           .pass;
    }
    out.push_back(CheckResult::from_bool("kernel: y-translation admitted everywhere", ddy_all));
    out.push_back(
        CheckResult::from_bool("kernel: x-translation rejected for a != 0", ddx_all_fail));
  }

  // equivalence transformations: functoriality and witness transport
  {
    GSSEquation eq{-1.0, 1.0, 2.0 * sq(u), exp(u)};
    SampleBox ubox{{VarSpec::real("u", 0.3, 1.8)}};
    bool functorial = true;
    const std::pair<EquivalenceTransform, EquivalenceTransform> pairs[] = {
        {{EquivalenceTransform::ShiftU, 0.4}, {EquivalenceTransform::ShiftU, -0.4}},
        {{EquivalenceTransform::ScaleU, 2.5}, {EquivalenceTransform::ScaleU, 0.4}},
        {{EquivalenceTransform::ScaleXY, 2.0}, {EquivalenceTransform::ScaleXY, 0.5}},
    };
    for (const auto& [fwd, inv] : pairs) {
      const GSSEquation round = apply_equivalence(apply_equivalence(eq, fwd), inv);
      functorial &= numeric_equal(round.F, eq.F, ubox, 30, 1e-12, cfg.seed + 21);
      functorial &= numeric_equal(round.G, eq.G, ubox, 30, 1e-12, cfg.seed + 22);
    }
    out.push_back(CheckResult::from_bool("equivalence transforms invert exactly", functorial));

    const WorkedSolution base = worked_cylindrical_solution(2.0, 1.0, cfg.seed + 23);
    bool witness = true;
    for (const EquivalenceTransform tr : {EquivalenceTransform{EquivalenceTransform::ShiftU, 0.3},
                                          {EquivalenceTransform::ScaleU, 1.7},
                                          {EquivalenceTransform::ScaleXY, 1.5}}) {
      const ResidualReport rep = solution_residual_report(
          transform_witness(base.solution, tr), gss_system(apply_equivalence(base.equation, tr)),
          cfg.samples, cfg.seed + 24, cfg.tol);
      witness &= rep.pass;
    }
    out.push_back(
        CheckResult::from_bool("equivalence images carry the witness solution", witness));
  }

  // conditional reduction lifts
  {
    SampleBox domain1{{VarSpec::real("x", 0.5, 2.0), VarSpec::real("y", -1.0, 1.0)}};
    const ConditionalReduction red1 = conditional_reduction(
        1.0, -1.0, 1.0, u, cosh(s), domain1, {-1.7, 0.7}, cfg.samples, cfg.seed + 30, cfg.tol);
    out.push_back(CheckResult::from_report(red1.profile_ok));
    out.push_back(CheckResult::from_report(
        solution_residual_report(red1.lifted, gss_system(red1.equation), cfg.samples,
                                 cfg.seed + 31, cfg.tol, "lifted profile (log branch)")));

    SampleBox domain2{{VarSpec::real("x", 0.3, 1.5), VarSpec::real("y", -1.0, 1.0)}};
    const ConditionalReduction red2 =
        conditional_reduction(2.0, 1.0, -1.0, Expr(1.0), 0.5 * sq(s), domain2, {-2.0, 2.0},
                              cfg.samples, cfg.seed + 32, cfg.tol);
    out.push_back(CheckResult::from_report(red2.profile_ok));
    out.push_back(CheckResult::from_report(
        solution_residual_report(red2.lifted, gss_system(red2.equation), cfg.samples,
                                 cfg.seed + 33, cfg.tol, "lifted profile (power branch)")));
  }

  // quadrature profiles against closed forms
  {
    bool ok = true;
    double worst = 0.0;
    {
      const QuadratureProfile prof(u, 1.0, 0.0, 3.0);
      for (double sv = 0.0; sv <= 3.0; sv += 0.1) {
        const double err = std::abs(prof.phi(sv) - std::cosh(sv)) / (1.0 + std::cosh(sv));
        worst = std::max(worst, err);
      }
    }
    {
      const QuadratureProfile prof(Expr(0.0), 1.0, 2.0, 3.0);
      for (double sv = 0.0; sv <= 3.0; sv += 0.25)
        worst = std::max(worst, std::abs(prof.phi(sv) - (1.0 + 2.0 * sv)));
    }
    {
      const QuadratureProfile prof(-u, 1.0, 0.0, 7.0);
      ok &= prof.turning_points() == 2;
      for (double sv = 0.0; sv <= 7.0; sv += 0.2)
        worst = std::max(worst, std::abs(prof.phi(sv) - std::cos(sv)));
    }
    ok &= worst < 1e-8;
    out.push_back(CheckResult::from_bool("quadrature profiles match closed forms", ok,
                                         nlohmann::ordered_json{{"sup_error", worst}}));
  }

  // the worked cylindrical configuration
  {
    const WorkedSolution w = worked_cylindrical_solution(2.0, 1.0, cfg.seed + 40);
    out.push_back(CheckResult::from_bool("worked solution identity at 1e-12",
                                         w.identity.pass && w.identity.max_residual < 1e-12,
                                         w.identity.to_json()));
    const double p_wall = evaluate_real(w.pressure, {{"x", 1.0}});
    const double i_wall = evaluate_real(w.current_squared, {{"x", 1.0}});
    const double i_axis = evaluate_real(w.current_squared, {{"x", 0.0}});
    out.push_back(CheckResult::from_bool(
        "pressure and current vanish at the wall; axis current matches",
        p_wall == 0.0 && i_wall == 0.0 && std::abs(i_axis - 8.0) < 1e-12,
        nlohmann::ordered_json{
            {"pressure_wall", p_wall}, {"current_sq_wall", i_wall}, {"current_sq_axis", i_axis}}));
  }
  return out;
}

// ---------------------------------------------------------------------------

inline nlohmann::ordered_json suite_report(const std::string& suite_name,
                                           const SuiteConfig& cfg,
                                           const std::vector<CheckResult>& checks) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["suite"] = suite_name;
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  j["tol"] = cfg.tol;
  j["pass"] = all_pass(checks);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CheckResult& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["detail"] = c.detail;
    arr.push_back(e);
  }
  j["checks"] = arr;
  return j;
}

inline std::vector<CheckResult> run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "liouville") return liouville_suite(cfg);
  if (name == "vortex") return vortex_suite(cfg);
  if (name == "gss") return gss_suite(cfg);
  if (name == "all") {
    std::vector<CheckResult> out = liouville_suite(cfg);
    for (auto& c : vortex_suite(cfg)) out.push_back(std::move(c));
    for (auto& c : gss_suite(cfg)) out.push_back(std::move(c));
    return out;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace liesym
