#pragma once

// Polynomial expression parser and canonical printer. The grammar is LL(1):
// variables x0..x4, integer and p/q rational literals, operators + - * ^
// with ^ restricted to nonnegative integer literals, and parentheses.
// Implicit multiplication is not accepted. The printer emits terms in the
// canonical term order with the same syntax, so parse(print(p)) == p for
// every rational-coefficient polynomial.

#include <cctype>
#include <string>
#include <vector>

#include "cubinv/poly.hpp"

namespace cubinv {

struct PolyExpr {
  std::string source;
  MultiPoly poly;
  std::vector<unsigned> variables_used;  // ascending
};

namespace parse_detail {

struct Parser {
  const std::string& s;
  unsigned arity;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  [[noreturn]] void syntax(const std::string& what, std::size_t at) {
    fail(errc::SyntaxError, what + " at byte " + std::to_string(at));
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool digit_next() {
    return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
  }

  std::string digits() {
    std::size_t start = pos;
    while (digit_next()) ++pos;
    return s.substr(start, pos - start);
  }

  unsigned long small_number(const char* what) {
    std::size_t at = pos;
    std::string d = digits();
    if (d.empty()) syntax(std::string(what) + " expected", at);
    if (d.size() > 6) syntax(std::string(what) + " out of range", at);
    return std::stoul(d);
  }

  MultiPoly expr() {
    skip_ws();
    bool neg = eat('-');
    MultiPoly acc = term();
    if (neg) acc = Scalar(-1) * acc;
    while (true) {
      skip_ws();
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  MultiPoly factor() {
    MultiPoly base = primary();
    if (eat('^')) {
      skip_ws();
      unsigned long e = small_number("exponent");
      MultiPoly out = MultiPoly::constant(arity, Scalar(1));
      for (unsigned long k = 0; k < e; ++k) out = out * base;
      return out;
    }
    return base;
  }

  MultiPoly primary() {
    skip_ws();
    if (pos >= s.size()) syntax("unexpected end of input", pos);
    char c = s[pos];
    if (c == '(') {
      ++pos;
      MultiPoly inner = expr();
      skip_ws();
      if (!eat(')')) syntax("expected ')'", pos);
      return inner;
    }
    if (c == 'x') {
      std::size_t at = pos;
      ++pos;
      if (!digit_next()) syntax("variable index expected", pos);
      unsigned long v = small_number("variable index");
      if (v >= arity)
        fail(errc::WrongArity, "variable x" + std::to_string(v) +
                                   " at byte " + std::to_string(at) +
                                   " exceeds arity " + std::to_string(arity));
      return MultiPoly::variable(arity, unsigned(v));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t at = pos;
      Int num(digits());
      if (eat('/')) {
        skip_ws();
        std::size_t dat = pos;
        std::string d = digits();
        if (d.empty()) syntax("denominator expected", dat);
        Int den(d);
        if (den == 0) syntax("denominator is zero", dat);
        return MultiPoly::constant(arity, Scalar(make_rat(num, den)));
      }
      (void)at;
      return MultiPoly::constant(arity, Scalar(make_rat(num, Int(1))));
    }
    syntax(std::string("unexpected character '") + c + "'", pos);
  }
};

}  // namespace parse_detail

inline PolyExpr parse_poly(const std::string& text, unsigned arity,
                           bool require_homogeneous = false) {
  parse_detail::Parser p{text, arity};
  PolyExpr out;
  out.source = text;
  out.poly = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.syntax("unexpected trailing input", p.pos);
  if (require_homogeneous && !out.poly.is_zero() &&
      !out.poly.is_homogeneous())
    fail(errc::NonHomogeneous, "polynomial mixes total degrees");
  std::vector<bool> seen(arity, false);
  for (const auto& [e, c] : out.poly.terms())
    for (unsigned v = 0; v < arity; ++v)
      if (e[v]) seen[v] = true;
  for (unsigned v = 0; v < arity; ++v)
    if (seen[v]) out.variables_used.push_back(v);
  return out;
}

inline std::string monomial_str(const Exp& e) {
  std::string out;
  for (unsigned v = 0; v < e.size(); ++v) {
    if (!e[v]) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(v);
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out;
}

// Canonical text form, inverse to parse_poly on rational coefficients.
// Polynomials over an extension field have no text form; reports render
// their coefficients as coordinate vectors instead.
inline std::string poly_str(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (c.tower())
      throw std::logic_error("no text form over an extension field");
    Rat r = c.coords()[0];
    bool negative = sgn(r) < 0;
    Rat a = abs(r);
    std::string mono = monomial_str(e);
    std::string piece;
    if (mono.empty())
      piece = rat_str(a);
    else if (a == 1)
      piece = mono;
    else
      piece = rat_str(a) + "*" + mono;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += piece;
    first = false;
  }
  return out;
}

}  // namespace cubinv
