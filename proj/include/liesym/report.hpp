// Residual reports: per-sample residual magnitudes with summary statistics
// and a fixed JSON schema used by the CLI and the verification suites.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "liesym/eval.hpp"

namespace liesym {

inline constexpr int kReportSchemaVersion = 1;

struct ResidualReport {
  std::string check;
  std::uint64_t seed = 0;
  int samples = 0;
  double tolerance = 0.0;
  std::vector<double> residuals;        // one magnitude per sample
  std::vector<EvaluationPoint> points;  // parallel to residuals
  int resampled = 0;

  double max_residual = 0.0;
  double mean_residual = 0.0;
  bool pass = false;

  void add(double residual, EvaluationPoint pt) {
    residuals.push_back(residual);
    points.push_back(std::move(pt));
  }

  // pass <=> max <= tolerance
  void finalize() {
    samples = static_cast<int>(residuals.size());
    max_residual = 0.0;
    mean_residual = 0.0;
    for (double r : residuals) {
      max_residual = std::max(max_residual, r);
      mean_residual += r;
    }
    if (samples > 0) mean_residual /= samples;
    pass = max_residual <= tolerance;
  }

  nlohmann::ordered_json to_json(int worst_count = 3) const {
    nlohmann::ordered_json j;
    j["check"] = check;
    j["seed"] = seed;
    j["samples"] = samples;
    j["max"] = max_residual;
    j["mean"] = mean_residual;
    j["tol"] = tolerance;
    j["pass"] = pass;
    // indices of the worst residuals, largest first
    std::vector<std::size_t> idx(residuals.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return residuals[a] > residuals[b]; });
    nlohmann::ordered_json worst = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < idx.size() && k < static_cast<std::size_t>(worst_count); ++k) {
      nlohmann::ordered_json w;
      nlohmann::ordered_json coords;
      for (const auto& [name, val] : points[idx[k]]) {
        if (val.imag() == 0.0)
          coords[name] = val.real();
        else
          coords[name] = {val.real(), val.imag()};
      }
      w["point"] = coords;
      w["residual"] = residuals[idx[k]];
      worst.push_back(w);
    }
    j["worst_points"] = worst;
    j["resampled"] = resampled;
    return j;
  }
};

}  // namespace liesym
