// Jet space: derivative coordinates of dependent variables up to a fixed
// order, treated as independent symbols, plus total-derivative operators.
//
// Coordinates are named dep + "_" + letters, one letter per differentiation
// in the order of the independent-variable list, with the multi-index kept
// sorted so each symmetric mixed partial is stored exactly once ("u_xxt",
// never "u_xtx").
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "liesym/diff.hpp"
#include "liesym/expr.hpp"
#include "liesym/simplify.hpp"

namespace liesym {

using MultiIndex = std::vector<int>;  // one count per independent variable

inline int total_order(const MultiIndex& j) {
  int n = 0;
  for (int c : j) n += c;
  return n;
}

class JetSpace {
 public:
  JetSpace(std::vector<std::string> indep, std::vector<std::string> dep, int order)
      : indep_(std::move(indep)), dep_(std::move(dep)), order_(order) {
    if (order_ < 0 || order_ > 3) throw std::invalid_argument("jet order must be 0..3");
    // enumerate all multi-indices of total order <= order, graded order
    MultiIndex j(indep_.size(), 0);
    enumerate(j, 0, order_);
    std::stable_sort(indices_.begin(), indices_.end(),
                     [](const MultiIndex& a, const MultiIndex& b) {
                       const int oa = total_order(a), ob = total_order(b);
                       return oa != ob ? oa < ob : a < b;
                     });
    for (std::size_t a = 0; a < dep_.size(); ++a)
      for (const MultiIndex& mi : indices_)
        coords_.emplace(coord(dep_[a], mi), CoordInfo{a, mi});
  }

  const std::vector<std::string>& indep() const { return indep_; }
  const std::vector<std::string>& dep() const { return dep_; }
  int order() const { return order_; }

  // all multi-indices with total order 0..order(), graded order
  const std::vector<MultiIndex>& indices() const { return indices_; }

  std::string coord(std::string_view dep, const MultiIndex& j) const {
    std::string name(dep);
    if (total_order(j) == 0) return name;
    name += '_';
    for (std::size_t i = 0; i < j.size(); ++i)
      for (int c = 0; c < j[i]; ++c) name += indep_[i];
    return name;
  }

  bool is_coord(std::string_view name) const { return coords_.count(std::string(name)) > 0; }

  struct CoordInfo {
    std::size_t dep_index;
    MultiIndex index;
  };
  const CoordInfo& coord_info(std::string_view name) const {
    auto it = coords_.find(std::string(name));
    if (it == coords_.end())
      throw std::invalid_argument("not a jet coordinate: " + std::string(name));
    return it->second;
  }

  std::vector<std::string> all_coordinates() const {
    std::vector<std::string> out;
    for (const std::string& d : dep_)
      for (const MultiIndex& mi : indices_) out.push_back(coord(d, mi));
    return out;
  }

  Expr coord_var(std::string_view dep, const MultiIndex& j) const {
    return Expr::variable(coord(dep, j));
  }

  // convenience: d("u", "xxt")
  Expr d(std::string_view dep, std::string_view letters) const {
    MultiIndex j(indep_.size(), 0);
    for (char c : letters) {
      bool found = false;
      for (std::size_t i = 0; i < indep_.size(); ++i)
        if (indep_[i].size() == 1 && indep_[i][0] == c) {
          ++j[i];
          found = true;
        }
      if (!found) throw std::invalid_argument("unknown differentiation letter");
    }
    return coord_var(dep, j);
  }

  // Total derivative D_i on expressions over jet coordinates:
  //   D_i f = df/dx_i + sum_{a,J} u_{a,J+e_i} df/du_{a,J}
  Expr total_derivative(const Expr& e, std::size_t i) const {
    Expr r = differentiate(e, indep_[i]);
    for (const std::string& name : free_variables(e)) {
      auto it = coords_.find(name);
      if (it == coords_.end()) continue;
      const CoordInfo& info = it->second;
      if (total_order(info.index) + 1 > order_)
        throw std::logic_error("total derivative exceeds jet order through " + name);
      MultiIndex up = info.index;
      ++up[i];
      r = r + coord_var(dep_[info.dep_index], up) * differentiate(e, name);
    }
    return simplify(r);
  }
  Expr total_derivative(const Expr& e, std::string_view indep_name) const {
    for (std::size_t i = 0; i < indep_.size(); ++i)
      if (indep_[i] == indep_name) return total_derivative(e, i);
    throw std::invalid_argument("unknown independent variable");
  }

  // spatial Laplacian D_x D_x + D_y D_y (first two independent variables)
  Expr laplacian(const Expr& e) const {
    return simplify(total_derivative(total_derivative(e, 0), 0) +
                    total_derivative(total_derivative(e, 1), 1));
  }

  // Poisson-type bracket {f,g} = D_x f D_y g - D_x g D_y f
  Expr bracket(const Expr& f, const Expr& g) const {
    return simplify(total_derivative(f, 0) * total_derivative(g, 1) -
                    total_derivative(g, 0) * total_derivative(f, 1));
  }

 private:
  void enumerate(MultiIndex& j, std::size_t pos, int remaining) {
    if (pos == j.size()) {
      indices_.push_back(j);
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      j[pos] = c;
      enumerate(j, pos + 1, remaining - c);
    }
    j[pos] = 0;
  }

  std::vector<std::string> indep_, dep_;
  int order_;
  std::vector<MultiIndex> indices_;
  std::map<std::string, CoordInfo> coords_;
};

}  // namespace liesym
