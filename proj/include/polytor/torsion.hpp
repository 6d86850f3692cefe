#pragma once

// The two torsion engines and the unit-ambiguity comparison machinery.
//
//  * chain_torsion: sign-determined torsion of a based chain complex,
//      tor = (-1)^{|C*|} prod_i [d_{i+1}(b^{i+1}) h~^i b^i / c^i]^{(-1)^{i+1}}
//    with |C*| = sum_k alpha_k beta_k.
//  * wada_torsion: torsion of the presentation 2-complex of a deficiency-one
//    presentation, det(Fox Jacobian minus column j) / det(Phi(x_j) - I).
//
// Torsion values carry their unit group {± zeta_N^b t^a, a in the phi-image
// lattice}; comparisons are decided exactly by support shapes, never by
// searching the infinite unit group.

#include "polytor/fox.hpp"
#include "polytor/ratfunc.hpp"
#include "polytor/reps.hpp"

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace polytor {

struct UnitGroup {
  bool allow_sign = true;
  long root_order = 1;  // zeta_N^b allowed
  Lattice monomial_lattice;

  static UnitGroup full(long nvars, long conductor) {
    return UnitGroup{true, conductor, Lattice::full(static_cast<std::size_t>(nvars))};
  }
};

struct TorsionValue {
  RatFunc value;  // nonzero
  UnitGroup units;
};

struct UnitWitness {
  int sign = 1;
  long zeta_power = 0;
  ExpVec monomial;
};

// Decides x = u * y for a unit u = sign * zeta^b * t^a with a in the union
// of the two monomial lattices; returns the witness when equal.
inline std::optional<UnitWitness> equal_up_to_unit(const TorsionValue& x, const TorsionValue& y) {
  if (x.value.num_vars() != y.value.num_vars())
    throw ValidationError("comparing torsions with different variable counts");
  if (x.value.is_zero() || y.value.is_zero())
    throw ValidationError("torsion values must be nonzero");

  LaurentPoly p = x.value.num() * y.value.den();
  LaurentPoly q = y.value.num() * x.value.den();

  const auto& [pe, pc] = p.lex_greatest();
  const auto& [qe, qc] = q.lex_greatest();
  ExpVec shift = exp_sub(pe, qe);
  CycloNum ratio = pc / qc;
  if (!(p == q.shifted(shift).scaled(ratio))) return std::nullopt;

  auto unit = as_unit_scalar(ratio);
  if (!unit) return std::nullopt;
  if (unit->sign < 0 && !(x.units.allow_sign || y.units.allow_sign)) return std::nullopt;

  Lattice allowed = Lattice::join(x.units.monomial_lattice, y.units.monomial_lattice);
  std::vector<BigInt> a(shift.size());
  for (std::size_t i = 0; i < shift.size(); ++i) a[i] = shift[i];
  if (!allowed.contains(a)) return std::nullopt;

  return UnitWitness{unit->sign, unit->zeta_power, shift};
}

// --- Wada torsion of a deficiency-one presentation --------------------------

// Column selection: first generator (in presentation order) whose
// det(Phi(x_j) - I) is nonzero. Returns nullopt if every column is singular.
inline std::optional<std::size_t> wada_column(const Presentation& p, const TensorRep& rep,
                                              std::vector<LaurentPoly>* dets_out = nullptr) {
  std::optional<std::size_t> found;
  Matrix<LaurentPoly> id = Matrix<LaurentPoly>::identity(
      static_cast<std::size_t>(rep.dim), LaurentPoly::one(rep.num_vars, rep.field));
  for (std::size_t j = 0; j < p.num_generators(); ++j) {
    Matrix<LaurentPoly> m = rep.of_letter(Letter{static_cast<int>(j), 1}) - id;
    LaurentPoly d = det_laurent(m, LaurentPoly::one(rep.num_vars, rep.field));
    if (dets_out) dets_out->push_back(d);
    if (!found && !d.is_zero()) {
      found = j;
      if (!dets_out) return found;
    }
  }
  return found;
}

inline Matrix<LaurentPoly> fox_jacobian(const Presentation& p, const TensorRep& rep) {
  std::size_t m = static_cast<std::size_t>(rep.dim);
  std::size_t rows = p.relators.size() * m;
  std::size_t cols = p.num_generators() * m;
  Matrix<LaurentPoly> jac(rows, cols, LaurentPoly::zero(rep.num_vars, rep.field));
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    for (std::size_t j = 0; j < p.num_generators(); ++j) {
      Matrix<LaurentPoly> block =
          evaluate(fox_derivative(p.relators[i], static_cast<int>(j)), rep);
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) jac.at(i * m + a, j * m + b) = block.at(a, b);
    }
  return jac;
}

// det(A with block column j deleted) / det(Phi(x_j) - I) for a chosen
// generator column whose det(Phi(x_j) - I) is nonzero.
inline TorsionValue wada_torsion_at_column(const Presentation& p, const TensorRep& rep,
                                           std::size_t col, const std::string& twist_label = {});

// det(A with block column j deleted) / det(Phi(x_j) - I), as a TorsionValue
// whose unit group is {± zeta_N^b t^a : a in the phi-image lattice}. The
// column is the first generator with det(Phi(x_j) - I) != 0.
inline TorsionValue wada_torsion(const Presentation& p, const TensorRep& rep,
                                 const std::string& twist_label = {}) {
  if (p.deficiency() != 1)
    throw UnsupportedError("torsion needs a deficiency-1 presentation (generators = relators + 1)");
  if (p.num_generators() != rep.num_generators())
    throw ValidationError("representation size does not match the presentation");

  std::optional<std::size_t> col = wada_column(p, rep);
  if (!col)
    throw NonAcyclicError("twisted complex not acyclic: det(Phi(x_j) - I) = 0 for every generator",
                          twist_label);
  return wada_torsion_at_column(p, rep, *col, twist_label);
}

inline TorsionValue wada_torsion_at_column(const Presentation& p, const TensorRep& rep,
                                           std::size_t col_in, const std::string& twist_label) {
  if (p.deficiency() != 1)
    throw UnsupportedError("torsion needs a deficiency-1 presentation (generators = relators + 1)");
  if (col_in >= p.num_generators())
    throw ValidationError("wada column index out of range");

  std::size_t m = static_cast<std::size_t>(rep.dim);
  LaurentPoly one = LaurentPoly::one(rep.num_vars, rep.field);
  Matrix<LaurentPoly> id = Matrix<LaurentPoly>::identity(m, one);
  LaurentPoly denominator =
      det_laurent(rep.of_letter(Letter{static_cast<int>(col_in), 1}) - id, one);
  if (denominator.is_zero())
    throw ValidationError("chosen wada column has det(Phi(x_j) - I) = 0");

  Matrix<LaurentPoly> jac = fox_jacobian(p, rep);
  Matrix<LaurentPoly> reduced(jac.rows(), jac.cols() - m,
                              LaurentPoly::zero(rep.num_vars, rep.field));
  for (std::size_t i = 0; i < jac.rows(); ++i) {
    std::size_t out_j = 0;
    for (std::size_t j = 0; j < jac.cols(); ++j) {
      if (j / m == col_in) continue;
      reduced.at(i, out_j++) = jac.at(i, j);
    }
  }

  LaurentPoly numerator = det_laurent(reduced, one);
  if (numerator.is_zero())
    throw NonAcyclicError("twisted complex not acyclic: reduced Fox Jacobian is singular",
                          twist_label);

  TorsionValue t;
  t.value = RatFunc(numerator, denominator);
  t.units = UnitGroup{true, rep.field->conductor(), rep.unit_lattice};
  return t;
}

// --- Sign-determined torsion of a based chain complex -----------------------

struct BasedChainComplex {
  long num_vars = 1;
  CycloFieldPtr field;
  // boundaries[i] is the matrix of d_{i+1}: C_{i+1} -> C_i acting on column
  // vectors in the chosen bases; dim C_0 = boundaries[0].rows().
  std::vector<Matrix<RatFunc>> boundaries;
  // homology_bases[i]: basis of H_i as vectors in C_i coordinates (must lie
  // in ker d_i and project to a basis). Empty vector = H_i expected zero.
  std::vector<std::vector<std::vector<RatFunc>>> homology_bases;

  std::size_t top_degree() const { return boundaries.size(); }

  std::size_t dim(std::size_t i) const {
    if (i == 0) return boundaries.empty() ? 0 : boundaries[0].rows();
    return boundaries[i - 1].cols();
  }
};

namespace detail {

struct ChainChoices {
  // Column-selection order per degree; defaults to left-to-right.
  std::vector<std::vector<std::size_t>> column_orders;
  // Optional lift perturbation: vectors added to homology lifts, each a
  // combination of boundary columns (torsion must not change).
  bool randomize_lifts = false;
  unsigned lift_seed = 0;
};

}  // namespace detail

// Torsion of a based (and homology-based) chain complex. `choices` lets the
// test oracle pick different b^i and lifts; the value is independent of them.
inline RatFunc chain_torsion_with_choices(const BasedChainComplex& cc,
                                          const detail::ChainChoices& choices) {
  if (cc.boundaries.empty()) throw ValidationError("empty chain complex");
  if (!cc.field) throw ValidationError("chain complex needs a coefficient field");
  const RatFunc one = RatFunc::one(cc.num_vars, cc.field);
  std::size_t N = cc.top_degree();

  // d_i d_{i+1} = 0
  for (std::size_t i = 0; i + 1 < N; ++i) {
    Matrix<RatFunc> prod = cc.boundaries[i] * cc.boundaries[i + 1];
    for (std::size_t a = 0; a < prod.rows(); ++a)
      for (std::size_t b = 0; b < prod.cols(); ++b)
        if (!prod.at(a, b).is_zero())
          throw ValidationError("not a chain complex: d.d != 0");
  }

  // Ranks and column bases S_i of d_i (i = 1..N).
  std::vector<std::vector<std::size_t>> S(N + 2);
  std::vector<std::size_t> rank(N + 2, 0);
  for (std::size_t i = 1; i <= N; ++i) {
    const Matrix<RatFunc>& d = cc.boundaries[i - 1];
    std::vector<std::size_t> order;
    if (i - 1 < choices.column_orders.size() && !choices.column_orders[i - 1].empty())
      order = choices.column_orders[i - 1];
    else {
      order.resize(d.cols());
      for (std::size_t j = 0; j < d.cols(); ++j) order[j] = j;
    }
    S[i] = column_basis(d, one, order);
    rank[i] = S[i].size();
  }

  // Betti numbers and homology bases.
  std::vector<std::size_t> betti(N + 1);
  std::size_t alpha = 0, beta = 0, csum = 0;
  long sign_exp = 0;
  for (std::size_t i = 0; i <= N; ++i) {
    std::size_t n_i = cc.dim(i);
    betti[i] = n_i - rank[i] - rank[i + 1];
    std::size_t supplied = i < cc.homology_bases.size() ? cc.homology_bases[i].size() : 0;
    if (supplied != betti[i])
      throw ValidationError("homology basis count mismatch in degree " + std::to_string(i) +
                            ": expected " + std::to_string(betti[i]) + ", got " +
                            std::to_string(supplied));
    csum += n_i;
    alpha = csum;
    beta += betti[i];
    sign_exp += static_cast<long>(alpha % 2) * static_cast<long>(beta % 2);
  }

  // Build and multiply the transition determinants.
  RatFunc torsion = one;
  std::mt19937 rng(choices.lift_seed);
  for (std::size_t i = 0; i <= N; ++i) {
    std::size_t n_i = cc.dim(i);
    if (n_i == 0) {
      if (betti[i] != 0 || rank[i] + rank[i + 1] != 0)
        throw ValidationError("dimension bookkeeping failed");
      continue;
    }
    Matrix<RatFunc> T(n_i, n_i, one.zero_like());
    std::size_t colpos = 0;
    // d_{i+1}(b^{i+1})
    if (i < N) {
      const Matrix<RatFunc>& d = cc.boundaries[i];
      for (std::size_t s : S[i + 1]) {
        for (std::size_t rrow = 0; rrow < n_i; ++rrow) T.at(rrow, colpos) = d.at(rrow, s);
        ++colpos;
      }
    }
    // homology lifts
    if (i < cc.homology_bases.size())
      for (const auto& h : cc.homology_bases[i]) {
        if (h.size() != n_i) throw ValidationError("homology vector has wrong length");
        // must lie in ker d_i
        if (i >= 1) {
          const Matrix<RatFunc>& d = cc.boundaries[i - 1];
          for (std::size_t rrow = 0; rrow < d.rows(); ++rrow) {
            RatFunc acc = one.zero_like();
            for (std::size_t cidx = 0; cidx < d.cols(); ++cidx) acc += d.at(rrow, cidx) * h[cidx];
            if (!acc.is_zero())
              throw ValidationError("homology vector is not a cycle in degree " + std::to_string(i));
          }
        }
        std::vector<RatFunc> lift = h;
        if (choices.randomize_lifts && i < N) {
          const Matrix<RatFunc>& d = cc.boundaries[i];
          for (std::size_t s : S[i + 1]) {
            long f = static_cast<long>(rng() % 5) - 2;
            if (f == 0) continue;
            RatFunc fr(LaurentPoly::constant(one.num_vars(),
                                             CycloNum(one.field(), Rational(f))));
            for (std::size_t rrow = 0; rrow < n_i; ++rrow)
              lift[rrow] += fr * d.at(rrow, s);
          }
        }
        for (std::size_t rrow = 0; rrow < n_i; ++rrow) T.at(rrow, colpos) = lift[rrow];
        ++colpos;
      }
    // b^i: standard basis vectors indexed by S[i]
    for (std::size_t s : S[i]) {
      T.at(s, colpos) = one;
      ++colpos;
    }
    if (colpos != n_i)
      throw ValidationError("transition matrix in degree " + std::to_string(i) + " is not square");

    RatFunc det = det_field(T, one);
    if (det.is_zero())
      throw ValidationError("supplied homology basis does not complete a basis in degree " +
                            std::to_string(i));
    bool invert = (i % 2 == 0);  // exponent (-1)^{i+1}
    torsion = invert ? torsion / det : torsion * det;
  }

  if (sign_exp % 2 != 0) torsion = -torsion;
  return torsion;
}

inline RatFunc chain_torsion(const BasedChainComplex& cc) {
  return chain_torsion_with_choices(cc, detail::ChainChoices{});
}

}  // namespace polytor
