#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "liesym/generator.hpp"
#include "liesym/jet.hpp"
#include "liesym/liouville.hpp"
#include "liesym/solution.hpp"
#include "liesym/system.hpp"

using namespace liesym;

namespace {

GeneratorField liouville_field_z2() {
  // the point symmetry with xi + i*eta = z^2: (x^2-y^2, 2xy, -2x)
  const Expr x = var("x"), y = var("y");
  return make_field("phi=z^2", {"x", "y"}, {"u"}, {sq(x) - sq(y), 2.0 * x * y}, {-2.0 * x});
}

}  // namespace

TEST_CASE("jet coordinates are named by sorted multi-index") {
  JetSpace space({"x", "y", "t"}, {"u", "v"}, 3);
  CHECK(space.coord("u", {0, 0, 0}) == "u");
  CHECK(space.coord("u", {2, 0, 1}) == "u_xxt");
  CHECK(space.coord("v", {1, 1, 0}) == "v_xy");
  CHECK(space.indices().size() == 20);  // orders 0..3 over three variables
  CHECK(space.all_coordinates().size() == 40);
  CHECK(space.is_coord("u_xxt"));
  CHECK_FALSE(space.is_coord("u_xxxx"));
  CHECK(space.coord_info("v_xy").dep_index == 1);
  CHECK(structural_equal(space.d("u", "xxt"), var("u_xxt")));
}

TEST_CASE("total derivative acts on jet coordinates") {
  JetSpace space({"x", "y"}, {"u"}, 3);
  CHECK(structural_equal(space.total_derivative(var("u"), 0), var("u_x")));
  // D_x(u_x * u_y) = u_xx u_y + u_x u_xy
  const Expr d = space.total_derivative(var("u_x") * var("u_y"), 0);
  CHECK(numeric_equal(d, var("u_xx") * var("u_y") + var("u_x") * var("u_xy"),
                      SampleBox{{VarSpec::real("u_x", -2, 2), VarSpec::real("u_y", -2, 2),
                                 VarSpec::real("u_xx", -2, 2), VarSpec::real("u_xy", -2, 2)}},
                      20, 1e-12, 5));
  // explicit independent-variable dependence
  const Expr e = space.total_derivative(var("x") * var("u"), 0);
  CHECK(numeric_equal(e, var("u") + var("x") * var("u_x"),
                      SampleBox{{VarSpec::real("x", -1, 1), VarSpec::real("u", -2, 2),
                                 VarSpec::real("u_x", -2, 2)}},
                      20, 1e-12, 5));
  // bracket of plain coordinates
  const Expr b = space.bracket(var("u"), var("u_xx"));
  CHECK(free_variables(b) ==
        std::set<std::string>{"u_x", "u_xxy", "u_xxx", "u_y"});
}

TEST_CASE("prolongation: constant-coefficient fields prolong to zero") {
  const EquationSystem sys = liouville_system();
  const GeneratorField g =
      make_field("d/dy", {"x", "y"}, {"u"}, {Expr(0.0), Expr(1.0)}, {Expr(0.0)});
  const auto pro = prolong(g, 2, sys.space);
  for (const auto& [coord, coeff] : pro) CHECK(simplify(coeff).is_constant(0.0));
}

TEST_CASE("prolongation: one hand-derived coefficient") {
  // xi = x^2-y^2, eta = 2xy, zeta = -2x:
  //   zeta^x = D_x zeta - (D_x xi) u_x - (D_x eta) u_y = -2 - 2x u_x - 2y u_y
  const EquationSystem sys = liouville_system();
  const auto pro = prolong(liouville_field_z2(), 2, sys.space);
  const Expr expected = -2.0 - 2.0 * var("x") * var("u_x") - 2.0 * var("y") * var("u_y");
  SampleBox box{{VarSpec::real("x", -1, 1), VarSpec::real("y", -1, 1),
                 VarSpec::real("u_x", -2, 2), VarSpec::real("u_y", -2, 2)}};
  CHECK(numeric_equal(pro.at("u_x"), expected, box, 30, 1e-12, 3));
}

TEST_CASE("prolongation of the scaling field is the identity on each level") {
  // g = u d/du has zeta^J = u_J for every multi-index
  JetSpace space({"x", "y", "t"}, {"u", "v"}, 3);
  EquationSystem dummy{"scaling-context", space, {}, {}, default_jet_box(space)};
  const GeneratorField g = make_field("u*d/du", {"x", "y", "t"}, {"u", "v"},
                                      {Expr(0.0), Expr(0.0), Expr(0.0)}, {var("u"), Expr(0.0)});
  const auto pro = prolong(g, 3, space);
  for (const MultiIndex& j : space.indices()) {
    CHECK(structural_equal(simplify(pro.at(space.coord("u", j))), space.coord_var("u", j)));
    CHECK(simplify(pro.at(space.coord("v", j))).is_constant(0.0));
  }
}

TEST_CASE("prolongation matches flow transport of a solution family") {
  // Transporting the Harris solution along the phi=z^2 flow and
  // differentiating at parameter zero must reproduce the characteristic
  // Q^J = zeta^J - xi u_{J,x} - eta u_{J,y} on the solution jet.
  const Expr x = var("x"), y = var("y");
  const Expr r2 = sq(x) + sq(y);
  auto family = [&](double lam) {
    const Expr denom = 1.0 - 2.0 * lam * x + lam * lam * r2;
    return simplify(-ln(denom * cosh((x - lam * r2) / denom)));
  };
  JetSpace space({"x", "y"}, {"u"}, 3);
  const GeneratorField g = liouville_field_z2();
  const auto pro = prolong(g, 2, space);

  ClosedFormSolution harris{{"x", "y"}, {{"u", family(0.0)}},
                            SampleBox{{VarSpec::real("x", -1, 1), VarSpec::real("y", -1, 1)}},
                            "harris"};
  const auto jet = solution_jet(harris, space);

  const double h = 2e-4;
  ClosedFormSolution plus{{"x", "y"}, {{"u", family(h)}}, harris.domain, "+"};
  ClosedFormSolution minus{{"x", "y"}, {{"u", family(-h)}}, harris.domain, "-"};
  const auto jet_p = solution_jet(plus, space);
  const auto jet_m = solution_jet(minus, space);

  std::mt19937_64 rng(17);
  for (int s = 0; s < 10; ++s) {
    const EvaluationPoint pt = sample_point(harris.domain, rng);
    EvaluationPoint full = pt;
    for (const auto& [coord, expr] : jet) full[coord] = evaluate_real(expr, pt);
    for (const MultiIndex& j : space.indices()) {
      if (total_order(j) > 2) continue;
      const std::string coord = space.coord("u", j);
      // gamma(z/(1-lambda z)) is the pullback of the graph transport, so the
      // forward-transported family is lambda -> family(-lambda)
      const double transported =
          (evaluate_real(jet_m.at(coord), pt) - evaluate_real(jet_p.at(coord), pt)) / (2.0 * h);
      MultiIndex jx = j, jy = j;
      ++jx[0];
      ++jy[1];
      const double q = evaluate_real(pro.at(coord), full) -
                       evaluate_real(g.xi[0], full) * full.at(space.coord("u", jx)).real() -
                       evaluate_real(g.xi[1], full) * full.at(space.coord("u", jy)).real();
      CAPTURE(coord, s);
      CHECK(std::abs(transported - q) <= 1e-5 * (1.0 + std::abs(q)));
    }
  }
}

TEST_CASE("point fields reject derivative coordinates; contact fields carry them") {
  CHECK_THROWS_AS(make_field("bad", {"x", "y"}, {"u"}, {var("u_x"), Expr(0.0)}, {Expr(0.0)}),
                  std::invalid_argument);
  const GeneratorField contact = make_field("contact", {"x", "y"}, {"u", "v"},
                                            {Expr(0.0), Expr(0.0)}, {var("u_y"), var("v_x")},
                                            /*contact=*/true);
  JetSpace space({"x", "y"}, {"u", "v"}, 2);
  CHECK_THROWS_AS(prolong(contact, 2, space), std::invalid_argument);
}

TEST_CASE("on-manifold sampling satisfies the solve rules") {
  const EquationSystem sys = liouville_system();
  std::mt19937_64 rng(23);
  int resampled = 0;
  for (int i = 0; i < 50; ++i) {
    const EvaluationPoint pt = sample_on_manifold(sys, rng, &resampled);
    CHECK(scaled_residual(sys.residuals[0], pt) < 1e-12);
  }
}

TEST_CASE("infinitesimal symmetry check on the Liouville equation") {
  const EquationSystem sys = liouville_system();
  const ResidualReport good =
      infinitesimal_symmetry_check(liouville_field_z2(), sys, 100, 42, 1e-9);
  CHECK(good.pass);

  // negative control: flipped zeta sign
  const Expr x = var("x"), y = var("y");
  const GeneratorField broken =
      make_field("broken", {"x", "y"}, {"u"}, {sq(x) - sq(y), 2.0 * x * y}, {2.0 * x});
  const ResidualReport bad = infinitesimal_symmetry_check(broken, sys, 100, 42, 1e-9);
  CHECK_FALSE(bad.pass);
  CHECK(bad.max_residual > 1e-3);
}

TEST_CASE("lie_derivative contracts the prolonged field with the gradient") {
  const EquationSystem sys = liouville_system();
  const Expr xstar = lie_derivative(liouville_field_z2(), sys.residuals[0], sys.space, 2);
  // on-manifold it vanishes; off-manifold it is generically nonzero
  std::mt19937_64 rng(31);
  for (int i = 0; i < 20; ++i) {
    const EvaluationPoint on = sample_on_manifold(sys, rng, nullptr);
    CHECK(std::abs(evaluate_real(xstar, on)) < 1e-9 * (1.0 + std::abs(evaluate_real(xstar, on))));
  }
  const EvaluationPoint off = sample_point(sys.jet_box, rng);
  CHECK(std::abs(evaluate(xstar, off)) > 1e-6);
}

TEST_CASE("commutators of simple planar fields") {
  const Expr x = var("x"), y = var("y");
  const GeneratorField ddx = make_field("d/dx", {"x", "y"}, {"u"}, {Expr(1.0), Expr(0.0)}, {Expr(0.0)});
  const GeneratorField scale =
      make_field("x d/dx", {"x", "y"}, {"u"}, {x, Expr(0.0)}, {Expr(0.0)});
  const GeneratorField c = commutator(ddx, scale);
  SampleBox box{{VarSpec::real("x", -1, 1), VarSpec::real("y", -1, 1), VarSpec::real("u", -1, 1)}};
  CHECK(fields_equal(c, ddx, box, 20, 1e-12, 9));
  // [X,X] = 0
  const GeneratorField zero = commutator(scale, scale);
  for (const Expr& e : zero.xi) CHECK(simplify(e).is_constant(0.0));
}

TEST_CASE("solution jets agree with direct differentiation") {
  JetSpace space({"x", "y"}, {"u"}, 3);
  const Expr x = var("x"), y = var("y");
  ClosedFormSolution sol{{"x", "y"},
                         {{"u", sq(x) * y + sin(y)}},
                         SampleBox{{VarSpec::real("x", -1, 1), VarSpec::real("y", -1, 1)}},
                         "poly"};
  const auto jet = solution_jet(sol, space);
  const EvaluationPoint pt{{"x", 0.7}, {"y", -0.4}};
  CHECK(evaluate_real(jet.at("u_xy"), pt) == Catch::Approx(2 * 0.7));
  CHECK(evaluate_real(jet.at("u_yyy"), pt) == Catch::Approx(-std::cos(-0.4)));
  CHECK(evaluate_real(jet.at("u_xxy"), pt) == Catch::Approx(2.0));
}
