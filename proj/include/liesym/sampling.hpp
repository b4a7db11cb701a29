// Seeded random sampling boxes and the randomized-evaluation equality oracle.
// All randomness in the project flows through an explicit 64-bit seed so that
// every report is bit-reproducible.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "liesym/eval.hpp"
#include "liesym/expr.hpp"

namespace liesym {

struct Interval {
  double lo = -1.0, hi = 1.0;
};

struct VarSpec {
  std::string name;
  bool complex_valued = false;
  Interval re{-1.0, 1.0};
  Interval im{-1.0, 1.0};  // used only when complex_valued

  static VarSpec real(std::string name, double lo, double hi) {
    return {std::move(name), false, {lo, hi}, {}};
  }
  static VarSpec complex(std::string name, Interval re, Interval im) {
    return {std::move(name), true, re, im};
  }
};

// A sampling box over named variables, with an optional admissibility
// predicate used to stay clear of declared singular sets.
struct SampleBox {
  std::vector<VarSpec> vars;
  std::function<bool(const EvaluationPoint&)> admissible;  // may be empty
  int max_resample = 1000;
};

struct SampleStats {
  int resampled = 0;
};

inline EvaluationPoint sample_point(const SampleBox& box, std::mt19937_64& rng,
                                    SampleStats* stats = nullptr) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt <= box.max_resample; ++attempt) {
    EvaluationPoint pt;
    for (const VarSpec& v : box.vars) {
      const double re = v.re.lo + (v.re.hi - v.re.lo) * unit(rng);
      double im = 0.0;
      if (v.complex_valued) im = v.im.lo + (v.im.hi - v.im.lo) * unit(rng);
      pt[v.name] = Complex(re, im);
    }
    if (!box.admissible || box.admissible(pt)) return pt;
    if (stats) ++stats->resampled;
  }
  throw std::runtime_error("sample_point: admissibility predicate rejected " +
                           std::to_string(box.max_resample) + " consecutive draws");
}

struct NumericEqualResult {
  bool equal = true;
  double max_deviation = 0.0;  // scaled
  EvaluationPoint worst;
};

// True iff |a-b| <= tol*(1 + max(|a|,|b|)) at all n seeded-random points.
inline bool numeric_equal(const Expr& a, const Expr& b, const SampleBox& box, int n, double tol,
                          std::uint64_t seed, NumericEqualResult* out = nullptr) {
  std::mt19937_64 rng(seed);
  NumericEqualResult res;
  for (int i = 0; i < n; ++i) {
    const EvaluationPoint pt = sample_point(box, rng);
    const Complex va = evaluate(a, pt);
    const Complex vb = evaluate(b, pt);
    const double dev = std::abs(va - vb) / (1.0 + std::max(std::abs(va), std::abs(vb)));
    if (dev > res.max_deviation) {
      res.max_deviation = dev;
      res.worst = pt;
    }
  }
  res.equal = res.max_deviation <= tol;
  if (out) *out = res;
  return res.equal;
}

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr std::uint64_t kDefaultSeed = 42;

}  // namespace liesym
