// Immutable symbolic expression trees over named real/complex variables.
//
// The node set is deliberately small: constants, variables, n-ary sums and
// products, negation, quotients, powers, and a fixed catalog of function
// applications.  Everything downstream (differentiation, evaluation,
// simplification, jet machinery) is closed over this set.
#pragma once

#include <charconv>
#include <complex>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace liesym {

using Complex = std::complex<double>;

enum class NodeKind : std::uint8_t {
  Constant,
  Variable,
  Sum,       // n-ary, >= 2 children
  Product,   // n-ary, >= 2 children
  Negate,    // 1 child
  Quotient,  // 2 children: num / den
  Power,     // 2 children: base ^ exponent
  Apply,     // function application
};

enum class Func : std::uint8_t {
  Exp, Ln, Sin, Cos, Sinh, Cosh, Atan2, Erf, Abs, Re, Im, Conj, Sqrt,
};

inline constexpr std::string_view func_name(Func f) {
  switch (f) {
    case Func::Exp:   return "exp";
    case Func::Ln:    return "ln";
    case Func::Sin:   return "sin";
    case Func::Cos:   return "cos";
    case Func::Sinh:  return "sinh";
    case Func::Cosh:  return "cosh";
    case Func::Atan2: return "arctan2";
    case Func::Erf:   return "erf";
    case Func::Abs:   return "abs";
    case Func::Re:    return "re";
    case Func::Im:    return "im";
    case Func::Conj:  return "conj";
    case Func::Sqrt:  return "sqrt";
  }
  return "?";
}

inline constexpr int func_arity(Func f) { return f == Func::Atan2 ? 2 : 1; }

class Expr;
struct ExprNode {
  NodeKind kind;
  Complex value{};         // Constant
  std::string name;        // Variable
  Func func{Func::Exp};    // Apply
  std::vector<Expr> args;  // children
};

// Value-semantic handle to an immutable, shared expression node.
class Expr {
 public:
  Expr() : Expr(0.0) {}
  Expr(double v) : node_(std::make_shared<const ExprNode>(ExprNode{NodeKind::Constant, Complex(v, 0.0)})) {}
  Expr(int v) : Expr(static_cast<double>(v)) {}

  static Expr constant(Complex v) {
    // canonicalize signed zeros so folded constants stay on the principal side
    // of branch cuts no matter how they were produced
    if (v.real() == 0.0) v.real(0.0);
    if (v.imag() == 0.0) v.imag(0.0);
    return Expr(std::make_shared<const ExprNode>(ExprNode{NodeKind::Constant, v}));
  }
  static Expr variable(std::string name) {
    ExprNode n{NodeKind::Variable};
    n.name = std::move(name);
    return Expr(std::make_shared<const ExprNode>(std::move(n)));
  }
  static Expr make(NodeKind kind, std::vector<Expr> args) {
    ExprNode n{kind};
    n.args = std::move(args);
    return Expr(std::make_shared<const ExprNode>(std::move(n)));
  }
  static Expr apply(Func f, std::vector<Expr> args) {
    ExprNode n{NodeKind::Apply};
    n.func = f;
    n.args = std::move(args);
    return Expr(std::make_shared<const ExprNode>(std::move(n)));
  }

  NodeKind kind() const { return node_->kind; }
  Complex value() const { return node_->value; }
  const std::string& name() const { return node_->name; }
  Func func() const { return node_->func; }
  const std::vector<Expr>& args() const { return node_->args; }
  std::size_t arity() const { return node_->args.size(); }
  const Expr& operator[](std::size_t i) const { return node_->args[i]; }

  bool is_constant() const { return kind() == NodeKind::Constant; }
  bool is_constant(double v) const {
    return is_constant() && value().real() == v && value().imag() == 0.0;
  }
  bool is_real_constant() const { return is_constant() && value().imag() == 0.0; }
  bool is_variable(std::string_view n) const { return kind() == NodeKind::Variable && name() == n; }

  const ExprNode* raw() const { return node_.get(); }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
};

inline Expr var(std::string name) { return Expr::variable(std::move(name)); }
inline Expr num(double v) { return Expr(v); }
inline Expr cnum(Complex v) { return Expr::constant(v); }
inline Expr imaginary_unit() { return Expr::constant(Complex(0.0, 1.0)); }

// --- smart constructors: fold neutral elements at build time -------------
//
// These keep derivative trees compact without doing any real rewriting;
// the heavier normalization lives in simplify().

inline Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() + b.value());
  return Expr::make(NodeKind::Sum, {a, b});
}

inline Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.value());
  if (a.kind() == NodeKind::Negate) return a[0];
  return Expr::make(NodeKind::Negate, {a});
}

inline Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return -b;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() - b.value());
  return Expr::make(NodeKind::Sum, {a, -b});
}

inline Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() * b.value());
  return Expr::make(NodeKind::Product, {a, b});
}

inline Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(0.0)) return a;
  if (a.is_constant() && b.is_constant() && b.value() != Complex(0.0, 0.0))
    return Expr::constant(a.value() / b.value());
  return Expr::make(NodeKind::Quotient, {a, b});
}

inline Expr pow(const Expr& base, const Expr& exponent) {
  if (exponent.is_constant(1.0)) return base;
  if (exponent.is_constant(0.0)) return Expr(1.0);
  return Expr::make(NodeKind::Power, {base, exponent});
}
inline Expr pow(const Expr& base, double e) { return pow(base, Expr(e)); }
inline Expr sq(const Expr& a) { return pow(a, 2.0); }

inline Expr operator+(double a, const Expr& b) { return Expr(a) + b; }
inline Expr operator+(const Expr& a, double b) { return a + Expr(b); }
inline Expr operator-(double a, const Expr& b) { return Expr(a) - b; }
inline Expr operator-(const Expr& a, double b) { return a - Expr(b); }
inline Expr operator*(double a, const Expr& b) { return Expr(a) * b; }
inline Expr operator*(const Expr& a, double b) { return a * Expr(b); }
inline Expr operator/(double a, const Expr& b) { return Expr(a) / b; }
inline Expr operator/(const Expr& a, double b) { return a / Expr(b); }

inline Expr exp(const Expr& a) { return Expr::apply(Func::Exp, {a}); }
inline Expr ln(const Expr& a) { return Expr::apply(Func::Ln, {a}); }
inline Expr sin(const Expr& a) { return Expr::apply(Func::Sin, {a}); }
inline Expr cos(const Expr& a) { return Expr::apply(Func::Cos, {a}); }
inline Expr sinh(const Expr& a) { return Expr::apply(Func::Sinh, {a}); }
inline Expr cosh(const Expr& a) { return Expr::apply(Func::Cosh, {a}); }
inline Expr atan2(const Expr& y, const Expr& x) { return Expr::apply(Func::Atan2, {y, x}); }
inline Expr erf(const Expr& a) { return Expr::apply(Func::Erf, {a}); }
inline Expr abs(const Expr& a) { return Expr::apply(Func::Abs, {a}); }
inline Expr re(const Expr& a) { return Expr::apply(Func::Re, {a}); }
inline Expr im(const Expr& a) { return Expr::apply(Func::Im, {a}); }
inline Expr conj(const Expr& a) { return Expr::apply(Func::Conj, {a}); }
inline Expr sqrt(const Expr& a) { return Expr::apply(Func::Sqrt, {a}); }
// sinh/cosh quotient; kept out of the node set on purpose
inline Expr tanh(const Expr& a) { return sinh(a) / cosh(a); }

// --- structural queries ----------------------------------------------------

inline bool structural_equal(const Expr& a, const Expr& b) {
  if (a.raw() == b.raw()) return true;
  if (a.kind() != b.kind() || a.arity() != b.arity()) return false;
  switch (a.kind()) {
    case NodeKind::Constant:
      if (a.value() != b.value()) return false;
      break;
    case NodeKind::Variable:
      if (a.name() != b.name()) return false;
      break;
    case NodeKind::Apply:
      if (a.func() != b.func()) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!structural_equal(a[i], b[i])) return false;
  return true;
}

inline void collect_variables(const Expr& e, std::set<std::string>& out) {
  if (e.kind() == NodeKind::Variable) out.insert(e.name());
  for (const Expr& c : e.args()) collect_variables(c, out);
}

inline std::set<std::string> free_variables(const Expr& e) {
  std::set<std::string> out;
  collect_variables(e, out);
  return out;
}

inline bool contains_variable(const Expr& e, std::string_view name) {
  if (e.kind() == NodeKind::Variable) return e.name() == name;
  for (const Expr& c : e.args())
    if (contains_variable(c, name)) return true;
  return false;
}

inline std::size_t node_count(const Expr& e) {
  std::size_t n = 1;
  for (const Expr& c : e.args()) n += node_count(c);
  return n;
}

// Simultaneous substitution of variables by expressions.
inline Expr substitute(const Expr& e, const std::vector<std::pair<std::string, Expr>>& map) {
  if (e.kind() == NodeKind::Variable) {
    for (const auto& [name, repl] : map)
      if (e.name() == name) return repl;
    return e;
  }
  if (e.arity() == 0) return e;
  bool changed = false;
  std::vector<Expr> args;
  args.reserve(e.arity());
  for (const Expr& c : e.args()) {
    args.push_back(substitute(c, map));
    if (args.back().raw() != c.raw()) changed = true;
  }
  if (!changed) return e;
  if (e.kind() == NodeKind::Apply) return Expr::apply(e.func(), std::move(args));
  return Expr::make(e.kind(), std::move(args));
}

inline Expr substitute(const Expr& e, const std::string& name, const Expr& repl) {
  return substitute(e, std::vector<std::pair<std::string, Expr>>{{name, repl}});
}

// --- printing ---------------------------------------------------------------

// Shortest digit string that round-trips through double.
inline std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

inline std::string format_constant(Complex v) {
  if (v.imag() == 0.0) return format_double(v.real());
  if (v.real() == 0.0) {
    if (v.imag() == 1.0) return "i";
    if (v.imag() == -1.0) return "(-1*i)";
    return "(" + format_double(v.imag()) + "*i)";
  }
  return "(" + format_double(v.real()) + " + " + format_double(v.imag()) + "*i)";
}

namespace detail {

// precedence levels for infix printing
inline constexpr int kPrecSum = 1, kPrecProd = 2, kPrecNeg = 3, kPrecPow = 4, kPrecAtom = 5;

inline void print_infix(const Expr& e, int parent_prec, std::string& out) {
  auto wrap = [&](int prec, auto&& emit) {
    const bool need = prec < parent_prec;
    if (need) out += '(';
    emit();
    if (need) out += ')';
  };
  switch (e.kind()) {
    case NodeKind::Constant: {
      const Complex v = e.value();
      if (v.imag() == 0.0 && v.real() < 0.0)
        wrap(kPrecNeg, [&] { out += format_double(v.real()); });
      else
        out += format_constant(v);
      break;
    }
    case NodeKind::Variable:
      out += e.name();
      break;
    case NodeKind::Sum:
      wrap(kPrecSum, [&] {
        for (std::size_t i = 0; i < e.arity(); ++i) {
          const Expr& t = e[i];
          if (i == 0) {
            print_infix(t, kPrecSum, out);
          } else if (t.kind() == NodeKind::Negate) {
            out += " - ";
            print_infix(t[0], kPrecSum + 1, out);
          } else if (t.is_constant() && t.value().imag() == 0.0 && t.value().real() < 0.0) {
            out += " - ";
            out += format_double(-t.value().real());
          } else {
            out += " + ";
            print_infix(t, kPrecSum, out);
          }
        }
      });
      break;
    case NodeKind::Product:
      wrap(kPrecProd, [&] {
        for (std::size_t i = 0; i < e.arity(); ++i) {
          if (i) out += '*';
          print_infix(e[i], kPrecProd + (i ? 1 : 0), out);
        }
      });
      break;
    case NodeKind::Negate:
      wrap(kPrecNeg, [&] {
        out += '-';
        print_infix(e[0], kPrecNeg, out);
      });
      break;
    case NodeKind::Quotient:
      wrap(kPrecProd, [&] {
        print_infix(e[0], kPrecProd, out);
        out += '/';
        print_infix(e[1], kPrecProd + 1, out);
      });
      break;
    case NodeKind::Power:
      wrap(kPrecPow, [&] {
        print_infix(e[0], kPrecPow + 1, out);
        out += '^';
        print_infix(e[1], kPrecPow, out);  // right-associative
      });
      break;
    case NodeKind::Apply:
      out += func_name(e.func());
      out += '(';
      for (std::size_t i = 0; i < e.arity(); ++i) {
        if (i) out += ", ";
        print_infix(e[i], 0, out);
      }
      out += ')';
      break;
  }
}

inline void print_prefix(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case NodeKind::Constant:
      if (e.value().imag() == 0.0) {
        out += format_double(e.value().real());
      } else {
        out += "(complex ";
        out += format_double(e.value().real());
        out += ' ';
        out += format_double(e.value().imag());
        out += ')';
      }
      return;
    case NodeKind::Variable:
      out += e.name();
      return;
    default:
      break;
  }
  out += '(';
  switch (e.kind()) {
    case NodeKind::Sum:      out += '+'; break;
    case NodeKind::Product:  out += '*'; break;
    case NodeKind::Negate:   out += "neg"; break;
    case NodeKind::Quotient: out += '/'; break;
    case NodeKind::Power:    out += '^'; break;
    case NodeKind::Apply:    out += func_name(e.func()); break;
    default:                 break;
  }
  for (const Expr& c : e.args()) {
    out += ' ';
    print_prefix(c, out);
  }
  out += ')';
}

}  // namespace detail

inline std::string to_infix(const Expr& e) {
  std::string out;
  detail::print_infix(e, 0, out);
  return out;
}

// Canonical prefix form used in reports and error messages.
inline std::string to_prefix(const Expr& e) {
  std::string out;
  detail::print_prefix(e, out);
  return out;
}

}  // namespace liesym
