#pragma once

// Exponent vectors in Z^n, shared by the Laurent layer (monomial exponents)
// and the group layer (abelianization images).

#include <cassert>
#include <vector>

namespace polytor {

using ExpVec = std::vector<long>;

inline ExpVec exp_add(const ExpVec& a, const ExpVec& b) {
  assert(a.size() == b.size());
  ExpVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline ExpVec exp_sub(const ExpVec& a, const ExpVec& b) {
  assert(a.size() == b.size());
  ExpVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline ExpVec exp_neg(const ExpVec& a) {
  ExpVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}

inline ExpVec exp_scaled(const ExpVec& a, long k) {
  ExpVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * k;
  return c;
}

inline bool exp_is_zero(const ExpVec& a) {
  for (long x : a)
    if (x != 0) return false;
  return true;
}

}  // namespace polytor
