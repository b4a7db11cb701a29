// Infix formula parser (Pratt style).  Grammar notes:
//   * `^` is the power operator, right-associative, binding tighter than
//     unary minus: -x^2 reads -(x^2).
//   * implicit multiplication is disallowed: 2x is a syntax error, 2*x is not.
//   * identifiers must be registered variables; `pi` and `i` are reserved
//     literals; function names from the fixed catalog must be called.
#pragma once

#include <cctype>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "liesym/expr.hpp"

namespace liesym {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), pos_(position) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

struct Token {
  enum Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End } type;
  std::string text;
  double number = 0.0;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }
  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    tok_.pos = i_;
    if (i_ >= src_.size()) {
      tok_.type = Token::End;
      return;
    }
    const char c = src_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
      std::size_t j = i_;
      while (j < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[j])) || src_[j] == '.'))
        ++j;
      if (j < src_.size() && (src_[j] == 'e' || src_[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
        if (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) {
          ++k;
          while (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) ++k;
          j = k;
        }
      }
      tok_.type = Token::Number;
      tok_.text = std::string(src_.substr(i_, j - i_));
      try {
        tok_.number = std::stod(tok_.text);
      } catch (const std::exception&) {
        throw ParseError("malformed number '" + tok_.text + "'", i_);
      }
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
        ++j;
      tok_.type = Token::Ident;
      tok_.text = std::string(src_.substr(i_, j - i_));
      i_ = j;
      return;
    }
    switch (c) {
      case '+': tok_.type = Token::Plus; break;
      case '-': tok_.type = Token::Minus; break;
      case '*': tok_.type = Token::Star; break;
      case '/': tok_.type = Token::Slash; break;
      case '^': tok_.type = Token::Caret; break;
      case '(': tok_.type = Token::LParen; break;
      case ')': tok_.type = Token::RParen; break;
      case ',': tok_.type = Token::Comma; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }
    tok_.text = std::string(1, c);
    ++i_;
  }

  std::string_view src_;
  std::size_t i_ = 0;
  Token tok_;
};

inline std::optional<Func> lookup_func(std::string_view name) {
  for (Func f : {Func::Exp, Func::Ln, Func::Sin, Func::Cos, Func::Sinh, Func::Cosh, Func::Atan2,
                 Func::Erf, Func::Abs, Func::Re, Func::Im, Func::Conj, Func::Sqrt})
    if (func_name(f) == name) return f;
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::string_view src, const std::set<std::string>& variables)
      : lex_(src), vars_(variables) {}

  Expr parse() {
    Expr e = parse_bp(0);
    const Token& t = lex_.peek();
    if (t.type != Token::End) throw ParseError("unexpected trailing token '" + t.text + "'", t.pos);
    return e;
  }

 private:
  // binding powers: sum 10, product 20, power 30 (right-assoc)
  Expr parse_bp(int min_bp) {
    Expr lhs = parse_prefix();
    for (;;) {
      const Token& t = lex_.peek();
      int bp;
      switch (t.type) {
        case Token::Plus:
        case Token::Minus: bp = 10; break;
        case Token::Star:
        case Token::Slash: bp = 20; break;
        case Token::Caret: bp = 30; break;
        case Token::Number:
        case Token::Ident:
        case Token::LParen:
          throw ParseError("implicit multiplication is not supported before '" + t.text + "'",
                           t.pos);
        default:
          return lhs;
      }
      if (bp < min_bp) return lhs;
      const Token op = lex_.next();
      // ^ is right-associative, others left
      Expr rhs = parse_bp(op.type == Token::Caret ? bp : bp + 1);
      switch (op.type) {
        case Token::Plus:  lhs = Expr::make(NodeKind::Sum, {lhs, rhs}); break;
        case Token::Minus: lhs = Expr::make(NodeKind::Sum, {lhs, -rhs}); break;
        case Token::Star:  lhs = Expr::make(NodeKind::Product, {lhs, rhs}); break;
        case Token::Slash: lhs = Expr::make(NodeKind::Quotient, {lhs, rhs}); break;
        case Token::Caret: lhs = Expr::make(NodeKind::Power, {lhs, rhs}); break;
        default: break;
      }
    }
  }

  Expr parse_prefix() {
    const Token t = lex_.next();
    switch (t.type) {
      case Token::Number:
        return Expr(t.number);
      case Token::Minus:
        return -parse_bp(25);  // binds tighter than * but looser than ^
      case Token::Plus:
        return parse_bp(25);
      case Token::LParen: {
        Expr e = parse_bp(0);
        expect(Token::RParen, ")");
        return e;
      }
      case Token::Ident: {
        if (lex_.peek().type == Token::LParen) {
          const auto f = lookup_func(t.text);
          if (!f) throw ParseError("unknown function '" + t.text + "'", t.pos);
          lex_.next();  // (
          std::vector<Expr> args;
          args.push_back(parse_bp(0));
          while (lex_.peek().type == Token::Comma) {
            lex_.next();
            args.push_back(parse_bp(0));
          }
          expect(Token::RParen, ")");
          if (static_cast<int>(args.size()) != func_arity(*f))
            throw ParseError("function '" + t.text + "' takes " +
                                 std::to_string(func_arity(*f)) + " argument(s)",
                             t.pos);
          return Expr::apply(*f, std::move(args));
        }
        if (t.text == "pi") return Expr(std::numbers::pi);
        if (t.text == "i") return imaginary_unit();
        if (lookup_func(t.text))
          throw ParseError("function '" + t.text + "' must be called", t.pos);
        if (!vars_.count(t.text))
          throw ParseError("unknown identifier '" + t.text + "'", t.pos);
        return Expr::variable(t.text);
      }
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.pos);
    }
  }

  void expect(Token::Type type, const char* what) {
    const Token t = lex_.next();
    if (t.type != type) throw ParseError(std::string("expected '") + what + "'", t.pos);
  }

  Lexer lex_;
  const std::set<std::string>& vars_;
};

}  // namespace detail

inline Expr parse(std::string_view source, const std::set<std::string>& variables) {
  return detail::Parser(source, variables).parse();
}

}  // namespace liesym
