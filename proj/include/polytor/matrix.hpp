#pragma once

// Dense matrices over exact scalar types, with field-style Gaussian
// elimination, fraction-free (Bareiss) determinants, and integer Smith
// normal form.

#include "polytor/errors.hpp"
#include "polytor/rational.hpp"

#include <cassert>
#include <cstddef>
#include <functional>
#include <type_traits>
#include <utility>
#include <vector>

namespace polytor {

// Context-preserving zero: scalar types carrying a field/variable-count
// context mint zeros through their zero_like member.
template <typename T>
T zero_like_of(const T& x) {
  if constexpr (std::is_same_v<T, BigInt> || std::is_same_v<T, Rational> ||
                std::is_arithmetic_v<T>) {
    (void)x;
    return T(0);
  } else {
    return x.zero_like();
  }
}

template <typename T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), e_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& one) {
    Matrix m(n, n, zero_like_of(one));
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& at(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return e_[i * cols_ + j];
  }
  const T& at(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return e_[i * cols_ + j];
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  Matrix transposed() const {
    if (rows_ == 0 || cols_ == 0) return Matrix();
    Matrix m(cols_, rows_, zero_like_of(e_[0]));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  Matrix without_column(std::size_t col) const {
    assert(col < cols_);
    Matrix m(rows_, cols_ - 1, rows_ && cols_ > 1 ? zero_like_of(e_[0]) : T{});
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j == col) continue;
        m.at(i, j < col ? j : j - 1) = at(i, j);
      }
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.cols_ == b.rows_);
    const T* sample = a.e_.empty() ? (b.e_.empty() ? nullptr : &b.e_[0]) : &a.e_[0];
    Matrix c(a.rows_, b.cols_, sample ? zero_like_of(*sample) : T{});
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a.at(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) c.at(i, j) += aik * b.at(k, j);
      }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    Matrix c = a;
    for (std::size_t i = 0; i < c.e_.size(); ++i) c.e_[i] += b.e_[i];
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    Matrix c = a;
    for (std::size_t i = 0; i < c.e_.size(); ++i) c.e_[i] -= b.e_[i];
    return c;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> e_;
};

// Determinant over a field type (needs /, is_zero, zero_like, one_like).
// `one` supplies context for the 0x0 case.
template <typename F>
F det_field(Matrix<F> m, const F& one) {
  assert(m.rows() == m.cols());
  std::size_t n = m.rows();
  F det = one;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m.at(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return one.zero_like();
    if (pivot != col) {
      for (std::size_t j = col; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      det = -det;
    }
    det = det * m.at(col, col);
    F inv = one / m.at(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m.at(i, col).is_zero()) continue;
      F f = m.at(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
    }
  }
  return det;
}

// Greedy column basis of im(m) over a field: the lexicographically first
// (in `order`) subset of column indices whose columns are independent.
template <typename F>
std::vector<std::size_t> column_basis(const Matrix<F>& m, const F& one,
                                      const std::vector<std::size_t>& order) {
  std::size_t rows = m.rows();
  std::vector<std::vector<F>> echelon;  // reduced rows, each with a pivot position
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> chosen;
  for (std::size_t col : order) {
    std::vector<F> v;
    v.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i) v.push_back(m.at(i, col));
    for (std::size_t k = 0; k < echelon.size(); ++k) {
      if (v[pivots[k]].is_zero()) continue;
      F f = v[pivots[k]];
      for (std::size_t i = 0; i < rows; ++i) v[i] -= f * echelon[k][i];
    }
    std::size_t p = 0;
    while (p < rows && v[p].is_zero()) ++p;
    if (p == rows) continue;
    F inv = one / v[p];
    for (auto& x : v) x = x * inv;
    echelon.push_back(std::move(v));
    pivots.push_back(p);
    chosen.push_back(col);
  }
  return chosen;
}

template <typename F>
std::size_t rank_field(const Matrix<F>& m, const F& one) {
  std::vector<std::size_t> order(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) order[j] = j;
  return column_basis(m, one, order).size();
}

// Fraction-free Bareiss determinant over an integral domain with exact
// division (T needs divide_exact or operator/ that is exact).
template <typename T>
T det_bareiss(Matrix<T> m, const T& one, const std::function<T(const T&, const T&)>& div) {
  assert(m.rows() == m.cols());
  std::size_t n = m.rows();
  if (n == 0) return one;
  T prev = one;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k).is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && m.at(pivot, k).is_zero()) ++pivot;
      if (pivot == n) return one.zero_like();
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m.at(i, j) = div(m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j), prev);
    prev = m.at(k, k);
  }
  T d = m.at(n - 1, n - 1);
  if (sign < 0) d = -d;
  return d;
}

// --- Smith normal form over Z ---------------------------------------------

struct SmithForm {
  Matrix<BigInt> U, D, V;  // U * m * V = D
  std::size_t rank = 0;
  std::vector<BigInt> invariant_factors;  // nonzero diagonal entries d_1 | d_2 | ...
};

namespace detail {

inline void rows_swap(Matrix<BigInt>& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}
inline void cols_swap(Matrix<BigInt>& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}
inline void rows_addmul(Matrix<BigInt>& m, std::size_t dst, std::size_t src, const BigInt& f) {
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(dst, j) += f * m.at(src, j);
}
inline void cols_addmul(Matrix<BigInt>& m, std::size_t dst, std::size_t src, const BigInt& f) {
  for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, dst) += f * m.at(i, src);
}
inline void rows_negate(Matrix<BigInt>& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) = -m.at(r, j);
}

}  // namespace detail

inline SmithForm smith_normal_form(const Matrix<BigInt>& input) {
  using detail::cols_addmul;
  using detail::cols_swap;
  using detail::rows_addmul;
  using detail::rows_swap;

  std::size_t rows = input.rows(), cols = input.cols();
  SmithForm s;
  s.D = input;
  s.U = Matrix<BigInt>::identity(rows, BigInt(1));
  s.V = Matrix<BigInt>::identity(cols, BigInt(1));
  Matrix<BigInt>& D = s.D;

  auto abs_lt = [](const BigInt& a, const BigInt& b) {
    return boost::multiprecision::abs(a) < boost::multiprecision::abs(b);
  };

  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Find the entry of least absolute value in the remaining block.
    std::size_t pi = t, pj = t;
    bool found = false;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (D.at(i, j) == 0) continue;
        if (!found || abs_lt(D.at(i, j), D.at(pi, pj))) { pi = i; pj = j; found = true; }
      }
    if (!found) break;
    if (pi != t) { rows_swap(D, pi, t); rows_swap(s.U, pi, t); }
    if (pj != t) { cols_swap(D, pj, t); cols_swap(s.V, pj, t); }

    bool dirty = false;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (D.at(i, t) == 0) continue;
      BigInt q = D.at(i, t) / D.at(t, t);
      if (q != 0) { rows_addmul(D, i, t, -q); rows_addmul(s.U, i, t, -q); }
      if (D.at(i, t) != 0) dirty = true;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (D.at(t, j) == 0) continue;
      BigInt q = D.at(t, j) / D.at(t, t);
      if (q != 0) { cols_addmul(D, j, t, -q); cols_addmul(s.V, j, t, -q); }
      if (D.at(t, j) != 0) dirty = true;
    }
    if (dirty) continue;  // smaller remainders exist; pick a new pivot

    // Row and column are clear. Enforce divisibility of the remaining block.
    bool fixed = false;
    for (std::size_t i = t + 1; i < rows && !fixed; ++i)
      for (std::size_t j = t + 1; j < cols && !fixed; ++j)
        if (D.at(i, j) % D.at(t, t) != 0) {
          rows_addmul(D, t, i, BigInt(1));
          rows_addmul(s.U, t, i, BigInt(1));
          fixed = true;
        }
    if (fixed) continue;

    if (D.at(t, t) < 0) { detail::rows_negate(D, t); detail::rows_negate(s.U, t); }
    ++t;
  }

  s.rank = t;
  for (std::size_t i = 0; i < t; ++i) s.invariant_factors.push_back(D.at(i, i));
  return s;
}

// Integer determinant by Bareiss (exact integer division throughout).
inline BigInt det_integer(Matrix<BigInt> m) {
  assert(m.rows() == m.cols());
  std::size_t n = m.rows();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && m.at(pivot, k) == 0) ++pivot;
      if (pivot == n) return 0;
      detail::rows_swap(m, pivot, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign < 0 ? BigInt(-m.at(n - 1, n - 1)) : m.at(n - 1, n - 1);
}

// Membership test helpers for sublattices of Z^n given by generator columns.
class Lattice {
 public:
  Lattice() = default;  // the zero lattice in Z^0
  explicit Lattice(Matrix<BigInt> generators)
      : gens_(std::move(generators)), snf_(smith_normal_form(gens_)) {}

  std::size_t ambient_dim() const { return gens_.rows(); }
  std::size_t rank() const { return snf_.rank; }
  const Matrix<BigInt>& generators() const { return gens_; }

  // index in Z^n, defined when rank == n: product of invariant factors.
  BigInt index_in_ambient() const {
    if (rank() != ambient_dim()) return 0;
    BigInt idx = 1;
    for (const auto& d : snf_.invariant_factors) idx *= d;
    return idx;
  }

  bool contains(const std::vector<BigInt>& x) const {
    assert(x.size() == gens_.rows());
    // x in im(gens) iff (U x)_i is divisible by d_i, zero past the rank.
    std::vector<BigInt> z(gens_.rows(), 0);
    for (std::size_t i = 0; i < gens_.rows(); ++i)
      for (std::size_t j = 0; j < gens_.rows(); ++j) z[i] += snf_.U.at(i, j) * x[j];
    for (std::size_t i = 0; i < gens_.rows(); ++i) {
      if (i < snf_.rank) {
        if (z[i] % snf_.invariant_factors[i] != 0) return false;
      } else if (z[i] != 0) {
        return false;
      }
    }
    return true;
  }

  bool contains_lattice(const Lattice& other) const {
    for (std::size_t j = 0; j < other.gens_.cols(); ++j) {
      std::vector<BigInt> col(other.gens_.rows());
      for (std::size_t i = 0; i < other.gens_.rows(); ++i) col[i] = other.gens_.at(i, j);
      if (!contains(col)) return false;
    }
    return true;
  }

  static Lattice join(const Lattice& a, const Lattice& b) {
    assert(a.ambient_dim() == b.ambient_dim());
    Matrix<BigInt> g(a.ambient_dim(), a.gens_.cols() + b.gens_.cols(), BigInt(0));
    for (std::size_t i = 0; i < a.ambient_dim(); ++i) {
      for (std::size_t j = 0; j < a.gens_.cols(); ++j) g.at(i, j) = a.gens_.at(i, j);
      for (std::size_t j = 0; j < b.gens_.cols(); ++j) g.at(i, a.gens_.cols() + j) = b.gens_.at(i, j);
    }
    return Lattice(std::move(g));
  }

  static Lattice full(std::size_t n) {
    return Lattice(Matrix<BigInt>::identity(n, BigInt(1)));
  }

 private:
  Matrix<BigInt> gens_;
  SmithForm snf_;
};

}  // namespace polytor
