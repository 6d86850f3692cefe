#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_N): residues modulo the
// N-th cyclotomic polynomial, coefficient vectors of length phi(N).

#include "polytor/errors.hpp"
#include "polytor/rational.hpp"

#include <algorithm>
#include <cassert>
#include <memory>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace polytor {

namespace detail {

// Dense univariate polynomials over Q, coefficient c[i] of x^i.
using QPoly = std::vector<Rational>;

inline void qpoly_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  qpoly_trim(c);
  return c;
}

// Euclidean division; both quotient and remainder returned.
inline std::pair<QPoly, QPoly> qpoly_divmod(QPoly a, const QPoly& b) {
  assert(!b.empty());
  QPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    qpoly_trim(a);
  }
  qpoly_trim(q);
  return {q, a};
}

}  // namespace detail

class CycloField;
using CycloFieldPtr = std::shared_ptr<const CycloField>;

// The fixed field Q(zeta_N). One instance is shared by every scalar of a
// computation session.
class CycloField : public std::enable_shared_from_this<CycloField> {
 public:
  static CycloFieldPtr make(long conductor) {
    if (conductor < 1) throw ValidationError("conductor must be >= 1");
    return CycloFieldPtr(new CycloField(conductor));
  }

  long conductor() const { return n_; }
  long degree() const { return degree_; }

  // Coefficients of the monic N-th cyclotomic polynomial, degree phi(N).
  const detail::QPoly& minimal_polynomial() const { return min_poly_; }

 private:
  explicit CycloField(long n) : n_(n) {
    min_poly_ = cyclotomic_polynomial(n);
    degree_ = static_cast<long>(min_poly_.size()) - 1;
    // x^degree == -(lower part); cached for reduction.
    fold_.assign(min_poly_.begin(), min_poly_.end() - 1);
    for (auto& c : fold_) c = -c;
  }

  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
  static detail::QPoly cyclotomic_polynomial(long n) {
    detail::QPoly num(static_cast<std::size_t>(n) + 1, Rational(0));
    num[0] = Rational(-1);
    num[static_cast<std::size_t>(n)] = Rational(1);
    for (long d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      auto [q, r] = detail::qpoly_divmod(num, cyclotomic_polynomial(d));
      assert(r.empty());
      num = std::move(q);
    }
    return num;
  }

  long n_;
  long degree_;
  detail::QPoly min_poly_;
  detail::QPoly fold_;  // x^degree expressed in lower powers

  friend class CycloNum;
};

// An element of Q(zeta_N), stored as a residue mod the cyclotomic polynomial.
class CycloNum {
 public:
  CycloNum() = default;

  CycloNum(CycloFieldPtr field, Rational value) : field_(std::move(field)) {
    coeffs_.assign(static_cast<std::size_t>(field_->degree()), Rational(0));
    coeffs_[0] = std::move(value);
  }

  static CycloNum zero(const CycloFieldPtr& f) { return CycloNum(f, Rational(0)); }
  static CycloNum one(const CycloFieldPtr& f) { return CycloNum(f, Rational(1)); }

  // zeta_N^k, any integer k.
  static CycloNum zeta_pow(const CycloFieldPtr& f, long k) {
    long n = f->conductor();
    k %= n;
    if (k < 0) k += n;
    std::vector<Rational> raw(static_cast<std::size_t>(k) + 1, Rational(0));
    raw.back() = Rational(1);
    return CycloNum(f, reduce(*f, std::move(raw)), 0);
  }

  static CycloNum zeta(const CycloFieldPtr& f) { return zeta_pow(f, 1); }

  const CycloFieldPtr& field() const { return field_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_) if (c != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i) if (coeffs_[i] != 0) return false;
    return true;
  }

  // Throws unless is_rational().
  Rational rational_value() const {
    if (!is_rational()) throw ValidationError("cyclotomic value is not rational");
    return coeffs_.empty() ? Rational(0) : coeffs_[0];
  }

  CycloNum zero_like() const { return zero(field_); }
  CycloNum one_like() const { return one(field_); }

  friend bool operator==(const CycloNum& a, const CycloNum& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

  CycloNum operator-() const {
    CycloNum r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  CycloNum& operator+=(const CycloNum& o) {
    check_same_field(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  CycloNum& operator-=(const CycloNum& o) {
    check_same_field(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  CycloNum& operator*=(const CycloNum& o) {
    check_same_field(o);
    std::size_t deg = coeffs_.size();
    std::vector<Rational> raw(2 * deg, Rational(0));
    for (std::size_t i = 0; i < deg; ++i) {
      if (coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < deg; ++j) {
        if (o.coeffs_[j] == 0) continue;
        raw[i + j] += coeffs_[i] * o.coeffs_[j];
      }
    }
    coeffs_ = reduce(*field_, std::move(raw));
    return *this;
  }

  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(CycloNum a, const CycloNum& b) { return a *= b; }

  CycloNum& operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend CycloNum operator*(CycloNum a, const Rational& s) { return a *= s; }

  // Multiplicative inverse via extended Euclid against the minimal polynomial.
  CycloNum inverse() const {
    if (is_zero()) throw ValidationError("division by zero in Q(zeta)");
    detail::QPoly a(coeffs_.begin(), coeffs_.end());
    detail::qpoly_trim(a);
    detail::QPoly r0 = field_->min_poly_, r1 = a;
    detail::QPoly s0{}, s1{Rational(1)};
    while (!r1.empty()) {
      auto [q, r2] = detail::qpoly_divmod(r0, r1);
      detail::QPoly s2 = s0;  // s2 = s0 - q*s1
      detail::QPoly qs = detail::qpoly_mul(q, s1);
      if (s2.size() < qs.size()) s2.resize(qs.size(), Rational(0));
      for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
      detail::qpoly_trim(s2);
      r0 = std::move(r1); r1 = std::move(r2);
      s0 = std::move(s1); s1 = std::move(s2);
    }
    // r0 = gcd, a nonzero constant since the cyclotomic polynomial is irreducible.
    assert(r0.size() == 1);
    Rational inv = Rational(1) / r0[0];
    for (auto& c : s0) c *= inv;
    s0.resize(coeffs_.size(), Rational(0));
    std::vector<Rational> out = reduce(*field_, std::move(s0));
    return CycloNum(field_, std::move(out), 0);
  }

  CycloNum& operator/=(const CycloNum& o) { return *this *= o.inverse(); }
  friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }

  CycloNum pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    CycloNum acc = one(field_);
    CycloNum base = *this;
    while (k > 0) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return acc;
  }

  // Field automorphism zeta -> zeta^j, gcd(j, N) = 1.
  CycloNum galois(long j) const {
    long n = field_->conductor();
    j %= n;
    if (j < 0) j += n;
    if (std::gcd(j, n) != 1) throw ValidationError("galois exponent not coprime to conductor");
    std::vector<Rational> raw(static_cast<std::size_t>(n) + 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      raw[static_cast<std::size_t>((static_cast<long>(i) * j) % n)] += coeffs_[i];
    return CycloNum(field_, reduce(*field_, std::move(raw)), 0);
  }

  // Complex conjugation, the automorphism zeta -> zeta^{N-1}.
  CycloNum conjugate() const {
    long n = field_->conductor();
    return n == 1 ? *this : galois(n - 1);
  }

  // Multiplicative order when *this is a root of unity in Q(zeta_N)
  // (the group of those is {±zeta^b}, of order lcm(2, N)), nullopt otherwise.
  std::optional<long> root_of_unity_order() const {
    if (is_zero()) return std::nullopt;
    long bound = lcm_long(2, field_->conductor());
    CycloNum acc = *this;
    for (long k = 1; k <= bound; ++k) {
      if (acc == one(field_)) return k;
      acc *= *this;
    }
    return std::nullopt;
  }

 private:
  CycloNum(CycloFieldPtr field, std::vector<Rational> coeffs, int)
      : field_(std::move(field)), coeffs_(std::move(coeffs)) {}

  void check_same_field(const CycloNum& o) const {
    if (field_->conductor() != o.field_->conductor())
      throw ValidationError("mixing cyclotomic fields of different conductor");
  }

  static std::vector<Rational> reduce(const CycloField& f, std::vector<Rational> raw) {
    std::size_t deg = static_cast<std::size_t>(f.degree_);
    for (std::size_t i = raw.size(); i-- > deg;) {
      if (raw[i] == 0) continue;
      Rational c = std::move(raw[i]);
      raw[i] = Rational(0);
      for (std::size_t j = 0; j < deg; ++j) raw[i - deg + j] += c * f.fold_[j];
    }
    raw.resize(deg, Rational(0));
    return raw;
  }

  CycloFieldPtr field_;
  std::vector<Rational> coeffs_;
};

// zeta_N^{k N / q}: an exact q-th root of unity of order q / gcd(q, k).
inline CycloNum cyclo_embed_root_of_unity(long q, long k, const CycloFieldPtr& field) {
  if (q < 1) throw ValidationError("root order must be positive");
  long n = field->conductor();
  if (n % q != 0)
    throw ConductorError("order " + std::to_string(q) + " does not divide conductor " +
                         std::to_string(n) + "; enlarge the conductor");
  return CycloNum::zeta_pow(field, k * (n / q));
}

// Decomposes c as sign * zeta_N^b when c is ± a root of unity; nullopt otherwise.
struct UnitScalar {
  int sign = 1;       // +1 or -1
  long zeta_power = 0;
};

inline std::optional<UnitScalar> as_unit_scalar(const CycloNum& c) {
  const auto& f = c.field();
  for (long b = 0; b < f->conductor(); ++b) {
    CycloNum z = CycloNum::zeta_pow(f, b);
    if (c == z) return UnitScalar{1, b};
    if (c == -z) return UnitScalar{-1, b};
  }
  return std::nullopt;
}

}  // namespace polytor
