#pragma once

// Canonical text rendering. Terms are emitted lexicographically by exponent
// vector, greatest first; cyclotomic coefficients print as polynomials in
// z = zeta_N with rational coefficients, e.g. "(1/2*z^2 - 1)*t1^2*t2^-1".
// When there is a single variable it is named plain "t". This rendering is
// the stable contract for CLI output and golden tests.

#include "polytor/laurent.hpp"
#include "polytor/ratfunc.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace polytor {

inline std::string var_name(long nvars, std::size_t i) {
  if (nvars == 1) return "t";
  return "t" + std::to_string(i + 1);
}

// "z^2 + 1/2*z - 1" (no outer parentheses).
inline std::string cyclo_to_string(const CycloNum& c) {
  if (c.is_zero()) return "0";
  const auto& v = c.coefficients();
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = v.size(); k-- > 0;) {
    if (v[k] == 0) continue;
    Rational coeff = v[k];
    if (first) {
      if (coeff < 0) { out << "-"; coeff = -coeff; }
    } else {
      out << (coeff < 0 ? " - " : " + ");
      if (coeff < 0) coeff = -coeff;
    }
    bool unit_coeff = (coeff == 1) && k > 0;
    if (!unit_coeff) out << to_string(coeff);
    if (k > 0) {
      if (!unit_coeff) out << "*";
      out << "z";
      if (k > 1) out << "^" << k;
    }
    first = false;
  }
  return out.str();
}

inline std::string monomial_to_string(long nvars, const ExpVec& e) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!first) out << "*";
    out << var_name(nvars, i);
    if (e[i] != 1) out << "^" << e[i];
    first = false;
  }
  return out.str();
}

inline std::string laurent_to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  const auto& terms = p.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const ExpVec& e = it->first;
    CycloNum c = it->second;
    std::string mono = monomial_to_string(p.num_vars(), e);

    std::string coeff_str;
    bool coeff_is_one = false;
    if (c.is_rational()) {
      Rational r = c.rational_value();
      bool neg = r < 0;
      if (neg) r = -r;
      if (first) {
        if (neg) out << "-";
      } else {
        out << (neg ? " - " : " + ");
      }
      coeff_is_one = (r == 1);
      if (!coeff_is_one || mono.empty()) coeff_str = to_string(r);
    } else {
      if (!first) out << " + ";
      coeff_str = "(" + cyclo_to_string(c) + ")";
    }

    if (!coeff_str.empty()) {
      out << coeff_str;
      if (!mono.empty()) out << "*";
    }
    out << mono;
    first = false;
  }
  return out.str();
}

inline std::string ratfunc_to_string(const RatFunc& f) {
  std::string num = laurent_to_string(f.num());
  if (f.den() == LaurentPoly::one(f.num_vars(), f.field())) return num;
  std::string den = laurent_to_string(f.den());
  if (f.num().term_count() > 1) num = "(" + num + ")";
  if (f.den().term_count() > 1) den = "(" + den + ")";
  return num + "/" + den;
}

}  // namespace polytor
