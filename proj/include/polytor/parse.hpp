#pragma once

// Parser for the text grammar emitted by render.hpp: rationals, cyclotomic
// numbers (polynomials in z), and Laurent polynomials in t / t1..tn.

#include "polytor/laurent.hpp"
#include "polytor/render.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace polytor {

namespace detail {

struct PolyLexer {
  std::string s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) { ++pos; return true; }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw ValidationError("expected '" + std::string(1, c) + "' at position " +
                            std::to_string(pos) + " in '" + s + "'");
  }
  long integer() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      throw ValidationError("expected integer at position " + std::to_string(start) + " in '" + s + "'");
    return std::stol(s.substr(start, pos - start));
  }
  Rational rational() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    std::string num = s.substr(start, pos - start);
    if (num.empty() || num == "-" || num == "+")
      throw ValidationError("expected number at position " + std::to_string(start) + " in '" + s + "'");
    if (accept('/')) {
      std::size_t dstart = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return parse_rational(num + "/" + s.substr(dstart, pos - dstart));
    }
    return parse_rational(num);
  }
};

// z-polynomial atom: sequence of (+|-) [rational] [* ] [z [^k]] terms.
inline CycloNum parse_cyclo_body(PolyLexer& lx, const CycloFieldPtr& field, char stop) {
  CycloNum acc = CycloNum::zero(field);
  bool first = true;
  while (!lx.eof() && lx.peek() != stop) {
    int sign = 1;
    if (lx.accept('-')) sign = -1;
    else if (lx.accept('+')) sign = 1;
    else if (!first)
      throw ValidationError("expected '+' or '-' in cyclotomic literal '" + lx.s + "'");
    Rational coeff(1);
    bool have_coeff = false;
    char c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      coeff = lx.rational();
      have_coeff = true;
    }
    long zpow = 0;
    if (have_coeff ? lx.accept('*') : true) {
      if (lx.peek() == 'z') {
        lx.expect('z');
        zpow = lx.accept('^') ? lx.integer() : 1;
      } else if (!have_coeff) {
        throw ValidationError("expected coefficient or z in '" + lx.s + "'");
      }
    }
    if (sign < 0) coeff = -coeff;
    acc += CycloNum::zeta_pow(field, zpow) * coeff;
    first = false;
  }
  if (first) throw ValidationError("empty cyclotomic literal");
  return acc;
}

}  // namespace detail

inline CycloNum parse_cyclo(const std::string& text, const CycloFieldPtr& field) {
  detail::PolyLexer lx{text};
  CycloNum c = detail::parse_cyclo_body(lx, field, '\0');
  if (!lx.eof()) throw ValidationError("trailing input in cyclotomic literal '" + text + "'");
  return c;
}

// Laurent polynomial over Q(zeta_N) in `nvars` variables named t or t1..tn.
inline LaurentPoly parse_laurent(const std::string& text, long nvars, const CycloFieldPtr& field) {
  detail::PolyLexer lx{text};
  LaurentPoly acc = LaurentPoly::zero(nvars, field);
  bool first = true;
  while (!lx.eof()) {
    int sign = 1;
    if (lx.accept('-')) sign = -1;
    else if (lx.accept('+')) sign = 1;
    else if (!first) throw ValidationError("expected '+' or '-' in '" + text + "'");

    CycloNum coeff = CycloNum::one(field);
    bool have_coeff = false;
    char c = lx.peek();
    if (c == '(') {
      lx.expect('(');
      coeff = detail::parse_cyclo_body(lx, field, ')');
      lx.expect(')');
      have_coeff = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      coeff = CycloNum(field, lx.rational());
      have_coeff = true;
    } else if (c == 'z') {
      lx.expect('z');
      long zp = lx.accept('^') ? lx.integer() : 1;
      coeff = CycloNum::zeta_pow(field, zp);
      have_coeff = true;
    }

    ExpVec e(static_cast<std::size_t>(nvars), 0);
    bool expect_var = !have_coeff;
    if (have_coeff && lx.accept('*')) expect_var = true;
    while (expect_var || lx.peek() == 't') {
      if (lx.peek() != 't') {
        if (expect_var) throw ValidationError("expected variable in '" + text + "'");
        break;
      }
      lx.expect('t');
      long idx = 0;
      if (nvars > 1) {
        idx = lx.integer() - 1;
        if (idx < 0 || idx >= nvars)
          throw ValidationError("variable index out of range in '" + text + "'");
      } else if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
        long shown = lx.integer();
        if (shown != 1) throw ValidationError("variable index out of range in '" + text + "'");
        idx = 0;
      }
      long p = lx.accept('^') ? lx.integer() : 1;
      e[static_cast<std::size_t>(idx)] += p;
      expect_var = lx.accept('*');
    }
    if (sign < 0) coeff = -coeff;
    acc += LaurentPoly::monomial(nvars, e, coeff);
    first = false;
  }
  if (first) throw ValidationError("empty polynomial literal");
  return acc;
}

}  // namespace polytor
