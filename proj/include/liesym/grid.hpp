// CSV grid export for closed-form solutions: comma-separated, '.' decimal,
// header row; cells outside the validity domain are emitted as explicit nan
// markers and counted.
#pragma once

#include <ostream>
#include <stdexcept>
#include <string>

#include "liesym/solution.hpp"

namespace liesym {

struct GridAxis {
  double lo = 0.0, hi = 0.0;
  int n = 0;
};

// parses "x0:x1:nx"
inline GridAxis parse_grid_axis(const std::string& spec) {
  GridAxis axis;
  const std::size_t c1 = spec.find(':');
  const std::size_t c2 = spec.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("grid axis must be lo:hi:n, got '" + spec + "'");
  try {
    axis.lo = std::stod(spec.substr(0, c1));
    axis.hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    axis.n = std::stoi(spec.substr(c2 + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("grid axis must be lo:hi:n, got '" + spec + "'");
  }
  if (axis.n < 2) throw std::invalid_argument("grid axis needs at least 2 points");
  return axis;
}

struct GridStats {
  long cells = 0;
  long nan_cells = 0;
};

// writes (x, y[, t], components...) rows; returns the nan-cell count
inline GridStats write_solution_grid(std::ostream& os, const ClosedFormSolution& sol,
                                     const GridAxis& gx, const GridAxis& gy,
                                     std::optional<double> t_value = std::nullopt) {
  os << "x,y";
  if (t_value) os << ",t";
  for (const auto& [dep, expr] : sol.components) os << ',' << dep;
  os << '\n';

  GridStats stats;
  for (int j = 0; j < gy.n; ++j) {
    const double y = gy.lo + (gy.hi - gy.lo) * j / (gy.n - 1);
    for (int i = 0; i < gx.n; ++i) {
      const double x = gx.lo + (gx.hi - gx.lo) * i / (gx.n - 1);
      EvaluationPoint pt{{"x", x}, {"y", y}};
      if (t_value) pt["t"] = *t_value;
      os << format_double(x) << ',' << format_double(y);
      if (t_value) os << ',' << format_double(*t_value);
      const bool admissible = !sol.domain.admissible || sol.domain.admissible(pt);
      ++stats.cells;
      bool nan_cell = !admissible;
      std::string row;
      if (admissible) {
        try {
          for (const auto& [dep, expr] : sol.components) {
            row += ',';
            row += format_double(evaluate_real(expr, pt));
          }
        } catch (const EvalError&) {
          nan_cell = true;
        }
      }
      if (nan_cell) {
        ++stats.nan_cells;
        row.clear();
        for (std::size_t k = 0; k < sol.components.size(); ++k) row += ",nan";
      }
      os << row << '\n';
    }
  }
  return stats;
}

}  // namespace liesym
