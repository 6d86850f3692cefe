#pragma once

// Reduced fractions of Laurent polynomials: the coefficient field
// Q(zeta_N)(t_1..t_n). Fractions are not kept fully GCD-reduced; equality is
// decided by cross-multiplication. The denominator is normalized to an
// ordinary polynomial (minimum exponent 0 in every variable) whose
// lex-greatest term has coefficient 1.

#include "polytor/laurent.hpp"

#include <cassert>
#include <utility>

namespace polytor {

class RatFunc {
 public:
  RatFunc() = default;

  explicit RatFunc(LaurentPoly num)
      : num_(std::move(num)), den_(LaurentPoly::one(num_.num_vars(), num_.field())) {}

  RatFunc(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ValidationError("rational function with zero denominator");
    normalize();
  }

  static RatFunc zero(long n, const CycloFieldPtr& f) {
    return RatFunc(LaurentPoly::zero(n, f));
  }
  static RatFunc one(long n, const CycloFieldPtr& f) {
    return RatFunc(LaurentPoly::one(n, f));
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  long num_vars() const { return num_.num_vars(); }
  const CycloFieldPtr& field() const { return num_.field(); }

  bool is_zero() const { return num_.is_zero(); }

  RatFunc zero_like() const { return zero(num_vars(), field()); }
  RatFunc one_like() const { return one(num_vars(), field()); }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw ValidationError("division by zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  RatFunc inverse() const {
    if (is_zero()) throw ValidationError("inverting zero rational function");
    return RatFunc(den_, num_);
  }

  // Structural equality of the stored (normalized but unreduced) pair.
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFunc vars_scaled(const std::vector<CycloNum>& c) const {
    return RatFunc(num_.vars_scaled(c), den_.vars_scaled(c));
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = LaurentPoly::one(num_.num_vars(), num_.field());
      return;
    }
    reduce_opportunistic();
    ExpVec shift;
    den_ = den_.monomial_normalized(&shift);
    num_ = num_.shifted(shift);
    const CycloNum& lead = den_.lex_greatest().second;
    if (!(lead == CycloNum::one(den_.field()))) {
      CycloNum inv = lead.inverse();
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  // Strips shared univariate polynomial factors; in the multivariate case
  // only a bounded exact-division attempt is made (full multivariate GCD is
  // out of scope).
  void reduce_opportunistic() {
    if (num_.is_zero() || den_.is_constant()) return;
    if (num_.num_vars() != 1) {
      if (num_.is_constant()) return;
      if (auto q = try_divide(num_, den_, 256)) {
        num_ = *q;
        den_ = LaurentPoly::one(num_.num_vars(), num_.field());
      }
      return;
    }
    if (num_.is_constant()) return;
    LaurentPoly g = univariate_gcd(num_, den_);
    if (g.term_count() <= 1) return;  // unit gcd
    num_ = divide_exact(num_, g);
    den_ = divide_exact(den_, g);
  }

  // Monic Euclidean gcd of univariate Laurent polynomials (monomial factors
  // are units and ignored).
  static LaurentPoly univariate_gcd(LaurentPoly a, LaurentPoly b) {
    a = a.monomial_normalized();
    b = b.monomial_normalized();
    auto deg = [](const LaurentPoly& p) { return p.lex_greatest().first[0]; };
    auto make_monic = [](LaurentPoly p) {
      return p.is_zero() ? p : p.scaled(p.lex_greatest().second.inverse());
    };
    a = make_monic(a);
    b = make_monic(b);
    while (!b.is_zero()) {
      // a mod b by repeated leading-term cancellation
      while (!a.is_zero() && deg(a) >= deg(b)) {
        const auto& la = a.lex_greatest();
        ExpVec e{la.first[0] - deg(b)};
        a -= LaurentPoly::monomial(1, e, la.second) * b;
      }
      a = make_monic(a.is_zero() ? a : a.monomial_normalized());
      std::swap(a, b);
    }
    return a;  // monic, min exponent 0
  }

  LaurentPoly num_, den_;
};

// Decides f == g by cross-multiplication.
inline bool ratfunc_equal(const RatFunc& f, const RatFunc& g) {
  if (f.num_vars() != g.num_vars())
    throw ValidationError("comparing rational functions with different variable counts");
  return f.num() * g.den() == g.num() * f.den();
}

}  // namespace polytor
