#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "liesym/diff.hpp"
#include "liesym/eval.hpp"
#include "liesym/expr.hpp"
#include "liesym/parse.hpp"
#include "liesym/sampling.hpp"
#include "liesym/simplify.hpp"

using namespace liesym;

namespace {

const std::set<std::string> kXY{"x", "y"};

// 5-point central difference, 4th order
double fd5(const Expr& e, const EvaluationPoint& pt, const std::string& v, double h) {
  auto at = [&](double dx) {
    EvaluationPoint p = pt;
    p[v] += dx;
    return evaluate_real(e, p);
  };
  return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
}

// random "tame" trees: total on [-1,1]^n, no poles or branch cuts
Expr random_tame(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
  std::uniform_real_distribution<double> cdist(-2.0, 2.0);
  switch (pick(rng)) {
    case 0: return Expr(cdist(rng));
    case 1: return var(rng() % 2 ? "x" : "y");
    case 2: return random_tame(rng, depth - 1) + random_tame(rng, depth - 1);
    case 3: return random_tame(rng, depth - 1) * random_tame(rng, depth - 1);
    case 4: return -random_tame(rng, depth - 1);
    case 5: return sin(random_tame(rng, depth - 1));
    case 6: return cos(random_tame(rng, depth - 1));
    default: return exp(0.3 * random_tame(rng, depth - 1));
  }
}

// random trees over the full node set; never evaluated
Expr random_any(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 12);
  std::uniform_real_distribution<double> cdist(-4.0, 4.0);
  switch (pick(rng)) {
    case 0: return Expr(cdist(rng));
    case 1: return var(rng() % 2 ? "x" : "y");
    case 2: return random_any(rng, depth - 1) + random_any(rng, depth - 1);
    case 3: return random_any(rng, depth - 1) * random_any(rng, depth - 1);
    case 4: return -random_any(rng, depth - 1);
    case 5: return random_any(rng, depth - 1) / random_any(rng, depth - 1);
    case 6: return pow(random_any(rng, depth - 1), random_any(rng, depth - 1));
    case 7: return sinh(random_any(rng, depth - 1));
    case 8: return cosh(random_any(rng, depth - 1));
    case 9: return ln(random_any(rng, depth - 1));
    case 10: return abs(random_any(rng, depth - 1));
    case 11: return atan2(random_any(rng, depth - 1), random_any(rng, depth - 1));
    default: return erf(random_any(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("parse builds the expected trees") {
  const Expr e = parse("cosh(x)", kXY);
  REQUIRE(e.kind() == NodeKind::Apply);
  REQUIRE(e.func() == Func::Cosh);
  REQUIRE(e[0].is_variable("x"));

  const Expr harris = parse("-ln(cosh(c*x+cp))", {"x", "c", "cp"});
  EvaluationPoint pt{{"x", 0.0}, {"c", 1.0}, {"cp", 0.0}};
  CHECK(evaluate_real(harris, pt) == Catch::Approx(0.0).margin(1e-15));

  const Expr q = parse("x^2 - y^2", kXY);
  CHECK(evaluate_real(q, {{"x", 3.0}, {"y", 2.0}}) == Catch::Approx(5.0));
}

TEST_CASE("parse reports errors with positions") {
  CHECK_THROWS_AS(parse("x +* y", kXY), ParseError);
  CHECK_THROWS_AS(parse("cosh(x", kXY), ParseError);
  CHECK_THROWS_AS(parse("x + nope", kXY), ParseError);
  CHECK_THROWS_AS(parse("2x", kXY), ParseError);  // implicit multiplication
  try {
    parse("x + nope", kXY);
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.position() == 4);
    CHECK(std::string(err.what()).find("nope") != std::string::npos);
  }
}

TEST_CASE("parse precedence and reserved literals") {
  // -x^2 is -(x^2); ^ is right-associative
  CHECK(evaluate_real(parse("-x^2", kXY), {{"x", 3.0}}) == Catch::Approx(-9.0));
  CHECK(evaluate_real(parse("2^3^2", {}), {}) == Catch::Approx(512.0));
  CHECK(evaluate_real(parse("pi", {}), {}) == Catch::Approx(std::numbers::pi));
  const Complex v = evaluate(parse("i*i", {}), {});
  CHECK(v.real() == Catch::Approx(-1.0));
  CHECK(std::abs(v.imag()) < 1e-15);
}

TEST_CASE("differentiate: calculus identities") {
  const Expr x = var("x");
  const Expr e = -ln(cosh(x));
  const Expr de = differentiate(e, "x");
  SampleBox box{{VarSpec::real("x", -2.0, 2.0)}};
  CHECK(numeric_equal(de, -tanh(x), box, 50, 1e-12, 7));

  // power rule with symbolic exponent: d/du u^(1+1/q) at q=-2 is u^(-1/2)/2
  const Expr u = var("u");
  const Expr p = pow(u, 1.0 + 1.0 / var("q"));
  const Expr dp = substitute(differentiate(p, "u"), "q", Expr(-2.0));
  SampleBox ubox{{VarSpec::real("u", 0.3, 2.5)}};
  CHECK(numeric_equal(dp, 0.5 * pow(u, -0.5), ubox, 50, 1e-12, 7));
}

TEST_CASE("differentiate_holomorphic matches complex finite differences") {
  const Expr z = var("z");
  const double lambda = 0.2;
  const Expr g = exp(z / (1.0 - lambda * z));
  const Expr dg = differentiate_holomorphic(g, "z");
  const Expr expected = exp(z / (1.0 - lambda * z)) * pow(1.0 - lambda * z, -2.0);
  SampleBox box{{VarSpec::complex("z", {-1.0, 1.0}, {-1.0, 1.0})}};
  CHECK(numeric_equal(dg, expected, box, 20, 1e-10, 11));

  // central complex finite differences, step 1e-6
  std::mt19937_64 rng(13);
  const double h = 1e-6;
  for (int i = 0; i < 20; ++i) {
    const EvaluationPoint pt = sample_point(box, rng);
    const Complex z0 = pt.at("z");
    auto at = [&](Complex dz) { return evaluate(g, {{"z", z0 + dz}}); };
    const Complex fd = (at({h, 0}) - at({-h, 0})) / (2 * h);
    const Complex sym = evaluate(dg, pt);
    CHECK(std::abs(fd - sym) / (1.0 + std::abs(sym)) < 1e-6);
  }

  // non-holomorphic nodes are rejected for complex variables
  CHECK_THROWS_AS(differentiate_holomorphic(abs(z), "z"), NonHolomorphicError);
  CHECK_THROWS_AS(differentiate_holomorphic(re(z * z), "z"), NonHolomorphicError);
  // ... but are fine when the node does not enclose the variable
  CHECK_NOTHROW(differentiate_holomorphic(z + abs(var("w")), "z"));
}

TEST_CASE("derivative of abs/re/im/conj with respect to a real variable") {
  // f(x) = |sinh(x)|; d/dx = sign(sinh x) cosh x
  const Expr x = var("x");
  const Expr f = abs(sinh(x));
  const Expr df = differentiate(f, "x");
  for (double xv : {0.4, 1.3, -0.7, -2.1}) {
    const double expect = (std::sinh(xv) > 0 ? 1.0 : -1.0) * std::cosh(xv);
    CHECK(evaluate_real(df, {{"x", xv}}) == Catch::Approx(expect).epsilon(1e-12));
  }

  // complex-valued composite of a real variable: |exp((x+2i)x)| via FD
  const Expr g = abs(exp((x + Expr::constant(Complex(0, 2))) * x));
  const Expr dg = differentiate(g, "x");
  for (double xv : {0.3, -0.9, 1.1}) {
    EvaluationPoint pt{{"x", xv}};
    CHECK(evaluate_real(dg, pt) == Catch::Approx(fd5(g, pt, "x", 1e-3)).margin(1e-8));
  }
}

TEST_CASE("evaluate: values, branches, domain errors") {
  // Bennet center value: ln(2|k|/(k^2+r^2)) at k=1, r=0 -> ln 2
  const Expr k = var("k"), r = var("r");
  const Expr bennet = ln(2.0 * abs(k) / (sq(k) + sq(r)));
  CHECK(evaluate_real(bennet, {{"k", 1.0}, {"r", 0.0}}) == Catch::Approx(std::log(2.0)));

  CHECK(evaluate_real(erf(var("x")), {{"x", 0.0}}) == 0.0);

  // cosh(Re beta)/|beta_z| for beta=z at z=1: beta_z=1
  const Expr z = var("z");
  const Expr bform = cosh(re(z)) / abs(Expr(1.0));
  CHECK(evaluate_real(bform, {{"z", Complex(1.0, 0.0)}}) == Catch::Approx(std::cosh(1.0)));

  CHECK_THROWS_AS(evaluate(ln(var("x")), EvaluationPoint{{"x", -1.0}}), EvalError);
  CHECK_THROWS_AS(evaluate(ln(var("x")), EvaluationPoint{{"x", 0.0}}), EvalError);
  CHECK_THROWS_AS(evaluate(var("x") / var("y"), EvaluationPoint{{"x", 1.0}, {"y", 0.0}}),
                  EvalError);
  CHECK_THROWS_AS(evaluate(var("missing"), EvaluationPoint{}), EvalError);
  CHECK_THROWS_AS(evaluate(atan2(var("x"), var("y")),
                           EvaluationPoint{{"x", 0.0}, {"y", 0.0}}),
                  EvalError);
  // the error message names the offending subtree
  try {
    evaluate(sq(var("x")) + ln(var("x")), EvaluationPoint{{"x", -2.0}});
    FAIL("expected EvalError");
  } catch (const EvalError& err) {
    CHECK(std::string(err.what()).find("(ln x)") != std::string::npos);
  }

  // integer powers keep negative real bases exact
  CHECK(evaluate_real(pow(var("x"), 3.0), {{"x", -2.0}}) == -8.0);
  // principal branch for complex exponentials
  const Complex w = evaluate(pow(var("z"), 0.5), {{"z", Complex(-1.0, 0.0)}});
  CHECK(w.real() == Catch::Approx(0.0).margin(1e-15));
  CHECK(w.imag() == Catch::Approx(1.0));
}

TEST_CASE("complex erf agrees with reference values") {
  // reference values computed with 30-digit arithmetic
  struct Ref {
    Complex z, v;
  };
  const Ref refs[] = {
      {{1.0, 1.0}, {1.3161512816979476449, 0.19045346923783468628}},
      {{0.5, -0.3}, {0.56156518852421316022, -0.26760586495760358257}},
      {{2.0, 2.0}, {1.151310866398069024, 0.12729162946314079101}},
      {{-1.5, 0.7}, {-1.0404046154368713576, 0.033625498125576171851}},
      {{3.5, 0.2}, {0.99999990936128448224, 7.6706146053507398095e-7}},
      {{-4.0, 1.0}, {-1.00000001509629525, 3.7940329690890710501e-8}},
      {{0.0, 2.0}, {0.0, 18.564802414575552599}},
  };
  for (const Ref& ref : refs) {
    const Complex got = erf_complex(ref.z);
    CAPTURE(ref.z.real(), ref.z.imag());
    CHECK(std::abs(got - ref.v) <= 1e-13 * (1.0 + std::abs(ref.v)));
  }
  CHECK(erf_complex({1.5, 0.0}).real() == Catch::Approx(std::erf(1.5)));
}

TEST_CASE("simplify: neutral elements, folding, like terms") {
  const Expr x = var("x"), y = var("y");
  CHECK(structural_equal(simplify(Expr::make(NodeKind::Sum, {x, Expr(0.0)})), x));
  CHECK(structural_equal(simplify(Expr::make(NodeKind::Product, {Expr(1.0), cosh(x)})), cosh(x)));
  CHECK(structural_equal(simplify(x + x), 2.0 * x));
  CHECK(structural_equal(simplify(3.0 * x - x - 2.0 * x), Expr(0.0)));
  CHECK(structural_equal(simplify(x * y - y * x), Expr(0.0)));
  CHECK(structural_equal(simplify(parse("2*3 + x*1 + 0", kXY)), x + 6.0));
  // no trigonometric rewriting: sin^2 + cos^2 is not folded to 1, only
  // canonically reordered
  const Expr pyth = sq(sin(x)) + sq(cos(x));
  CHECK(structural_equal(simplify(pyth), sq(cos(x)) + sq(sin(x))));
}

TEST_CASE("simplify is idempotent on random trees") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 300; ++i) {
    const Expr e = random_any(rng, 5);
    const Expr s = simplify(e);
    CHECK(structural_equal(simplify(s), s));
  }
}

TEST_CASE("simplify preserves value") {
  std::mt19937_64 rng(303);
  SampleBox box{{VarSpec::real("x", -1.0, 1.0), VarSpec::real("y", -1.0, 1.0)}};
  for (int i = 0; i < 200; ++i) {
    const Expr e = random_tame(rng, 4);
    CHECK(numeric_equal(e, simplify(e), box, 5, 1e-12, 999 + i));
  }
}

TEST_CASE("print-parse round trip up to simplify") {
  std::mt19937_64 rng(202);
  for (int i = 0; i < 300; ++i) {
    const Expr e = random_any(rng, 8);
    const Expr back = parse(to_infix(e), kXY);
    CHECK(structural_equal(simplify(back), simplify(e)));
  }
}

TEST_CASE("evaluate is a homomorphism over each node kind") {
  std::mt19937_64 rng(404);
  SampleBox box{{VarSpec::real("x", -1.0, 1.0), VarSpec::real("y", -1.0, 1.0)}};
  for (int i = 0; i < 100; ++i) {
    const Expr a = random_tame(rng, 3), b = random_tame(rng, 3);
    const EvaluationPoint pt = sample_point(box, rng);
    const Complex va = evaluate(a, pt), vb = evaluate(b, pt);
    CHECK(std::abs(evaluate(a + b, pt) - (va + vb)) <= 1e-12 * (1.0 + std::abs(va + vb)));
    CHECK(std::abs(evaluate(a * b, pt) - va * vb) <= 1e-12 * (1.0 + std::abs(va * vb)));
    CHECK(std::abs(evaluate(-a, pt) + va) == 0.0);
    const Complex vq = evaluate(a / (b + 4.0), pt);
    CHECK(std::abs(vq - va / (vb + 4.0)) <= 1e-12 * (1.0 + std::abs(vq)));
    CHECK(std::abs(evaluate(sin(a), pt) - std::sin(va)) <= 1e-12);
  }
}

TEST_CASE("symbolic derivatives match 5-point finite differences") {
  // the property the whole verification engine leans on
  const Expr x = var("x"), y = var("y");
  const std::vector<Expr> catalog = {
      -ln(cosh(x)),
      ln(2.0 / (1.0 + sq(x) + sq(y))),
      -ln(cosh(2.0 * x) + 0.5 * cos(2.0 * y)),
      erf(x) * exp(-sq(x)) + sinh(y),
      atan2(y, x + 3.0),
      abs(sinh(x + 2.0)) * cos(y),
      pow(sq(x) + sq(y) + 1.0, 1.5),
  };
  std::mt19937_64 rng(555);
  SampleBox box{{VarSpec::real("x", -1.5, 1.5), VarSpec::real("y", -1.5, 1.5)}};
  for (const Expr& e : catalog) {
    for (const char* v : {"x", "y"}) {
      const Expr de = differentiate(e, v);
      for (int i = 0; i < 20; ++i) {
        const EvaluationPoint pt = sample_point(box, rng);
        const double sym = evaluate_real(de, pt);
        const double fd = fd5(e, pt, v, 1e-2);
        CAPTURE(to_infix(e), v, pt.at("x").real(), pt.at("y").real());
        CHECK(std::abs(sym - fd) <= 1e-6 * (1.0 + std::abs(sym)));
      }
    }
  }
}

TEST_CASE("numeric_equal distinguishes close-but-unequal expressions") {
  const Expr x = var("x");
  SampleBox box{{VarSpec::real("x", -1.0, 1.0)}};
  CHECK(numeric_equal(differentiate(-ln(cosh(x)), "x"), -tanh(x), box, 50, 1e-9, 1));
  CHECK_FALSE(numeric_equal(x, x + 1e-3, box, 50, 1e-9, 1));
  NumericEqualResult res;
  numeric_equal(x, x + 1e-3, box, 50, 1e-9, 1, &res);
  CHECK(res.max_deviation > 1e-4);
}

TEST_CASE("substitution and structural helpers") {
  const Expr x = var("x"), y = var("y");
  const Expr e = sq(x) + sin(y * x);
  const Expr s = substitute(e, "x", y + 1.0);
  CHECK(structural_equal(s, sq(y + 1.0) + sin(y * (y + 1.0))));
  CHECK(free_variables(e) == std::set<std::string>{"x", "y"});
  CHECK(contains_variable(e, "y"));
  CHECK_FALSE(contains_variable(e, "z"));
  CHECK(to_prefix(sq(x) + 1.0) == "(+ (^ x 2) 1)");
}

TEST_CASE("sampling box honors exclusion predicates deterministically") {
  SampleBox box{{VarSpec::real("x", -1.0, 1.0)}};
  box.admissible = [](const EvaluationPoint& pt) { return std::abs(pt.at("x").real()) > 0.5; };
  std::mt19937_64 a(9), b(9);
  SampleStats stats;
  for (int i = 0; i < 100; ++i) {
    const EvaluationPoint pa = sample_point(box, a, &stats);
    const EvaluationPoint pb = sample_point(box, b);
    CHECK(pa.at("x") == pb.at("x"));
    CHECK(std::abs(pa.at("x").real()) > 0.5);
  }
  CHECK(stats.resampled > 0);
}
