#pragma once

// Multivariate Laurent polynomials in t_1..t_n over Q(zeta_N). Terms are
// kept in a map ordered lexicographically by exponent vector; no zero
// coefficients are stored.

#include "polytor/cyclotomic.hpp"
#include "polytor/errors.hpp"
#include "polytor/expvec.hpp"
#include "polytor/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace polytor {

class LaurentPoly {
 public:
  LaurentPoly() = default;

  LaurentPoly(long num_vars, CycloFieldPtr field)
      : nvars_(num_vars), field_(std::move(field)) {}

  static LaurentPoly zero(long n, const CycloFieldPtr& f) { return LaurentPoly(n, f); }

  static LaurentPoly constant(long n, CycloNum c) {
    LaurentPoly p(n, c.field());
    if (!c.is_zero()) p.terms_.emplace(ExpVec(static_cast<std::size_t>(n), 0), std::move(c));
    return p;
  }

  static LaurentPoly one(long n, const CycloFieldPtr& f) {
    return constant(n, CycloNum::one(f));
  }

  static LaurentPoly monomial(long n, const ExpVec& e, CycloNum c) {
    assert(static_cast<long>(e.size()) == n);
    LaurentPoly p(n, c.field());
    if (!c.is_zero()) p.terms_.emplace(e, std::move(c));
    return p;
  }

  // t_i as a polynomial.
  static LaurentPoly variable(long n, long i, const CycloFieldPtr& f) {
    assert(i >= 0 && i < n);
    ExpVec e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    return monomial(n, e, CycloNum::one(f));
  }

  long num_vars() const { return nvars_; }
  const CycloFieldPtr& field() const { return field_; }
  const std::map<ExpVec, CycloNum>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_monomial() const { return terms_.size() == 1; }

  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const ExpVec& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](long x) { return x == 0; });
  }

  CycloNum coefficient(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? CycloNum::zero(field_) : it->second;
  }

  LaurentPoly zero_like() const { return LaurentPoly(nvars_, field_); }
  LaurentPoly one_like() const { return one(nvars_, field_); }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_compatible(b);
    LaurentPoly p(a.nvars_, a.field_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) p.add_term(exp_add(ea, eb), ca * cb);
    return p;
  }

  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly scaled(const CycloNum& c) const {
    LaurentPoly p(nvars_, field_);
    if (c.is_zero()) return p;
    for (const auto& [e, v] : terms_) p.terms_.emplace(e, v * c);
    return p;
  }

  LaurentPoly shifted(const ExpVec& by) const {
    LaurentPoly p(nvars_, field_);
    for (const auto& [e, v] : terms_) p.terms_.emplace(exp_add(e, by), v);
    return p;
  }

  // Variable scaling t_i -> c_i * t_i.
  LaurentPoly vars_scaled(const std::vector<CycloNum>& c) const {
    assert(static_cast<long>(c.size()) == nvars_);
    LaurentPoly p(nvars_, field_);
    for (const auto& [e, v] : terms_) {
      CycloNum f = v;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (e[i] != 0) f *= c[i].pow(e[i]);
      p.add_term(e, f);
    }
    return p;
  }

  // Full evaluation: t_i -> values[i] (values must be invertible where
  // negative exponents occur).
  CycloNum evaluated_at(const std::vector<CycloNum>& values) const {
    assert(static_cast<long>(values.size()) == nvars_);
    CycloNum acc = CycloNum::zero(field_);
    for (const auto& [e, v] : terms_) {
      CycloNum f = v;
      for (std::size_t i = 0; i < values.size(); ++i)
        if (e[i] != 0) f *= values[i].pow(e[i]);
      acc += f;
    }
    return acc;
  }

  // Galois automorphism applied coefficientwise.
  LaurentPoly coeff_galois(long j) const {
    LaurentPoly p(nvars_, field_);
    for (const auto& [e, v] : terms_) p.add_term(e, v.galois(j));
    return p;
  }

  // Componentwise minimum of exponent vectors over the support.
  ExpVec min_exponents() const {
    assert(!terms_.empty());
    ExpVec m = terms_.begin()->first;
    for (const auto& [e, v] : terms_)
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
    return m;
  }

  const std::pair<const ExpVec, CycloNum>& lex_greatest() const {
    assert(!terms_.empty());
    return *terms_.rbegin();
  }
  const std::pair<const ExpVec, CycloNum>& lex_least() const {
    assert(!terms_.empty());
    return *terms_.begin();
  }

  // Shift so every variable has minimum exponent 0; returns the shift applied.
  LaurentPoly monomial_normalized(ExpVec* shift_out = nullptr) const {
    if (terms_.empty()) {
      if (shift_out) shift_out->assign(static_cast<std::size_t>(nvars_), 0);
      return *this;
    }
    ExpVec m = min_exponents();
    if (shift_out) *shift_out = exp_neg(m);
    return shifted(exp_neg(m));
  }

 private:
  void check_compatible(const LaurentPoly& o) const {
    if (nvars_ != o.nvars_)
      throw ValidationError("mixing Laurent polynomials with different variable counts");
  }

  void add_term(const ExpVec& e, const CycloNum& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  long nvars_ = 0;
  CycloFieldPtr field_;
  std::map<ExpVec, CycloNum> terms_;
};

// Division by leading-term cancellation. Returns the quotient q with
// f = q * g, or nullopt once max_steps cancellations fail to finish (the
// division was not exact).
inline std::optional<LaurentPoly> try_divide(const LaurentPoly& f, const LaurentPoly& g,
                                             std::size_t max_steps = 1 << 12) {
  if (g.is_zero()) return std::nullopt;
  LaurentPoly rem = f;
  LaurentPoly quot(f.num_vars(), f.field());
  const auto& glead = g.lex_greatest();
  CycloNum ginv = glead.second.inverse();
  std::size_t steps = 0;
  while (!rem.is_zero()) {
    if (++steps > max_steps) return std::nullopt;
    const auto& rlead = rem.lex_greatest();
    ExpVec qe = exp_sub(rlead.first, glead.first);
    CycloNum qc = rlead.second * ginv;
    LaurentPoly qterm = LaurentPoly::monomial(f.num_vars(), qe, qc);
    quot += qterm;
    rem -= qterm * g;
    if (!rem.is_zero() && !(rem.lex_greatest().first < rlead.first)) return std::nullopt;
  }
  return quot;
}

// Exact division: f must be a multiple of g (as inside Bareiss elimination).
inline LaurentPoly divide_exact(const LaurentPoly& f, const LaurentPoly& g) {
  auto q = try_divide(f, g, std::numeric_limits<std::size_t>::max());
  if (!q) throw std::logic_error("non-exact Laurent division");
  return *q;
}

// Fraction-free determinant of a Laurent matrix: a global monomial is
// factored from each row to keep exponents nonnegative, Bareiss runs on the
// polynomial part, and the monomials multiply back in.
inline LaurentPoly det_fraction_free(Matrix<LaurentPoly> m) {
  assert(m.rows() == m.cols());
  if (m.rows() == 0) throw std::logic_error("det_fraction_free needs a context for 0x0");
  LaurentPoly one = m.at(0, 0).one_like();
  ExpVec total(static_cast<std::size_t>(m.at(0, 0).num_vars()), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ExpVec row_min;
    bool any = false;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const LaurentPoly& e = m.at(i, j);
      if (e.is_zero()) continue;
      ExpVec em = e.min_exponents();
      if (!any) { row_min = em; any = true; }
      else for (std::size_t k = 0; k < row_min.size(); ++k) row_min[k] = std::min(row_min[k], em[k]);
    }
    if (!any) return one.zero_like();  // zero row
    total = exp_add(total, row_min);
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) m.at(i, j) = m.at(i, j).shifted(exp_neg(row_min));
  }
  std::function<LaurentPoly(const LaurentPoly&, const LaurentPoly&)> div =
      [](const LaurentPoly& a, const LaurentPoly& b) { return divide_exact(a, b); };
  LaurentPoly d = det_bareiss<LaurentPoly>(std::move(m), one, div);
  return d.shifted(total);
}

inline LaurentPoly det_laurent(const Matrix<LaurentPoly>& m, const LaurentPoly& one_exemplar) {
  if (m.rows() == 0) return one_exemplar;
  return det_fraction_free(m);
}

}  // namespace polytor
