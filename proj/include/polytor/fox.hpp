#pragma once

// Fox free differential calculus on words and evaluation of group-ring
// elements under a TensorRep.

#include "polytor/reps.hpp"
#include "polytor/word.hpp"

#include <map>

namespace polytor {

// An element of the integral group ring Z[F]: finite map word -> coefficient.
class GroupRingElem {
 public:
  GroupRingElem() = default;

  static GroupRingElem of_word(const Word& w, long coeff = 1) {
    GroupRingElem e;
    e.add(w, coeff);
    return e;
  }

  const std::map<Word, long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Word& w, long coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  GroupRingElem& operator+=(const GroupRingElem& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  GroupRingElem& operator-=(const GroupRingElem& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  friend GroupRingElem operator+(GroupRingElem a, const GroupRingElem& b) { return a += b; }
  friend GroupRingElem operator-(GroupRingElem a, const GroupRingElem& b) { return a -= b; }

  friend GroupRingElem operator*(const GroupRingElem& a, const GroupRingElem& b) {
    GroupRingElem p;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) p.add(wa * wb, ca * cb);
    return p;
  }

  friend bool operator==(const GroupRingElem&, const GroupRingElem&) = default;

 private:
  std::map<Word, long> terms_;
};

// d(uv)/dx = du/dx + u dv/dx, dx/dx = 1, d(x^-1)/dx = -x^-1.
inline GroupRingElem fox_derivative(const Word& w, int gen) {
  GroupRingElem out;
  Word prefix;
  for (const auto& l : w.letters()) {
    if (l.sign > 0) {
      if (l.gen == gen) out.add(prefix, 1);
      prefix *= Word::generator(l.gen, 1);
    } else {
      prefix *= Word::generator(l.gen, -1);
      if (l.gen == gen) out.add(prefix, -1);
    }
  }
  return out;
}

// Linear extension of gamma -> Phi(gamma) to the group ring.
inline Matrix<LaurentPoly> evaluate(const GroupRingElem& e, const TensorRep& rep) {
  Matrix<LaurentPoly> acc(static_cast<std::size_t>(rep.dim), static_cast<std::size_t>(rep.dim),
                          LaurentPoly::zero(rep.num_vars, rep.field));
  for (const auto& [w, c] : e.terms()) {
    Matrix<LaurentPoly> m = rep.of_word(w);
    LaurentPoly scale =
        LaurentPoly::constant(rep.num_vars, CycloNum(rep.field, Rational(c)));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) acc.at(i, j) += m.at(i, j) * scale;
  }
  return acc;
}

}  // namespace polytor
