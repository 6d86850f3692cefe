#pragma once

// Homomorphism data: the surjection phi onto Z^n, matrix representations
// rho with det = 1, characters of the deck group, their pullbacks to cover
// subgroups, and the combined generator-indexed map
//     Phi(gamma) = twist(gamma) * t^{phi(gamma)} * rho(gamma)
// acting on the left, evaluated as matrices over Laurent polynomials.

#include "polytor/laurent.hpp"
#include "polytor/schreier.hpp"

#include <string>
#include <vector>

namespace polytor {

// phi on generators; surjective for base manifolds, finite-index image for
// cover subgroups (is_cover suppresses the surjectivity requirement).
struct AbelMap {
  long num_vars = 0;
  std::vector<ExpVec> images;  // one per generator
  bool is_cover = false;

  ExpVec of_word(const Word& w) const { return phi_of_word(images, w, num_vars); }

  Lattice image_lattice() const {
    Matrix<BigInt> m(static_cast<std::size_t>(num_vars), images.size(), BigInt(0));
    for (std::size_t j = 0; j < images.size(); ++j)
      for (long i = 0; i < num_vars; ++i)
        m.at(static_cast<std::size_t>(i), j) = images[j][static_cast<std::size_t>(i)];
    return Lattice(std::move(m));
  }

  void validate(const Presentation& p) const {
    if (num_vars < 1) throw ValidationError("phi must target Z^n with n >= 1");
    if (images.size() != p.num_generators())
      throw ValidationError("phi must assign an image to every generator");
    for (const auto& e : images)
      if (static_cast<long>(e.size()) != num_vars)
        throw ValidationError("phi image has wrong length");
    for (const auto& r : p.relators)
      if (!exp_is_zero(of_word(r)))
        throw ValidationError("phi does not kill every relator");
    Lattice L = image_lattice();
    if (L.rank() != static_cast<std::size_t>(num_vars))
      throw ValidationError("phi image does not have full rank in Z^n");
    if (!is_cover && L.index_in_ambient() != 1)
      throw ValidationError("phi is not surjective onto Z^n");
  }
};

inline AbelMap default_phi(const Presentation& p) {
  Abelianization ab = abelianization(p);
  return AbelMap{ab.rank, ab.phi_images, false};
}

// Matrix representation over Q(zeta_N). Every relator must evaluate to the
// identity; generators must have determinant 1 when dim >= 2, and
// root-of-unity values when dim == 1.
struct MatRep {
  long dim = 1;
  std::vector<Matrix<CycloNum>> images;  // one per generator

  static MatRep trivial(const Presentation& p, const CycloFieldPtr& field) {
    MatRep r;
    r.dim = 1;
    r.images.assign(p.num_generators(), Matrix<CycloNum>::identity(1, CycloNum::one(field)));
    return r;
  }

  Matrix<CycloNum> of_word(const Word& w, const CycloFieldPtr& field) const {
    Matrix<CycloNum> acc = Matrix<CycloNum>::identity(static_cast<std::size_t>(dim),
                                                      CycloNum::one(field));
    for (const auto& l : w.letters()) {
      const Matrix<CycloNum>& g = images[static_cast<std::size_t>(l.gen)];
      acc = acc * (l.sign > 0 ? g : invert(g, field));
    }
    return acc;
  }

  static Matrix<CycloNum> invert(const Matrix<CycloNum>& m, const CycloFieldPtr& field) {
    std::size_t n = m.rows();
    Matrix<CycloNum> a(n, 2 * n, CycloNum::zero(field));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a.at(i, j) = m.at(i, j);
      a.at(i, n + i) = CycloNum::one(field);
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      while (pivot < n && a.at(pivot, col).is_zero()) ++pivot;
      if (pivot == n) throw ValidationError("representation matrix is singular");
      if (pivot != col)
        for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a.at(pivot, j), a.at(col, j));
      CycloNum inv = a.at(col, col).inverse();
      for (std::size_t j = 0; j < 2 * n; ++j) a.at(col, j) *= inv;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == col || a.at(i, col).is_zero()) continue;
        CycloNum f = a.at(i, col);
        for (std::size_t j = 0; j < 2 * n; ++j) a.at(i, j) -= f * a.at(col, j);
      }
    }
    Matrix<CycloNum> out(n, n, CycloNum::zero(field));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out.at(i, j) = a.at(i, n + j);
    return out;
  }

  void validate(const Presentation& p, const CycloFieldPtr& field) const {
    if (dim < 1) throw ValidationError("representation dimension must be >= 1");
    if (images.size() != p.num_generators())
      throw ValidationError("rho must assign a matrix to every generator");
    for (std::size_t j = 0; j < images.size(); ++j) {
      const auto& m = images[j];
      if (m.rows() != static_cast<std::size_t>(dim) || m.cols() != static_cast<std::size_t>(dim))
        throw ValidationError("rho image has wrong shape for generator " + p.generator_names[j]);
      CycloNum d = det_field(m, CycloNum::one(field));
      if (dim >= 2) {
        if (!(d == CycloNum::one(field)))
          throw ValidationError("rho(" + p.generator_names[j] + ") must have determinant 1");
      } else {
        if (!as_unit_scalar(d))
          throw ValidationError("one-dimensional rho(" + p.generator_names[j] +
                                ") must be a root of unity");
      }
    }
    Matrix<CycloNum> id =
        Matrix<CycloNum>::identity(static_cast<std::size_t>(dim), CycloNum::one(field));
    for (const auto& r : p.relators)
      if (!(of_word(r, field) == id))
        throw ValidationError("rho does not satisfy every relator");
  }
};

// --- Characters of the deck group -------------------------------------------

// xi(e_i) = zeta_{q_i}^{k_i}.
struct Character {
  FinAbGroup group;
  std::vector<long> k;

  CycloNum value_at(const std::vector<long>& g, const CycloFieldPtr& field) const {
    CycloNum v = CycloNum::one(field);
    for (std::size_t i = 0; i < k.size(); ++i)
      v *= cyclo_embed_root_of_unity(group.invariant_factors[i], k[i] * g[i], field);
    return v;
  }

  std::string label() const {
    std::string s = "(";
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(k[i]);
    }
    return s + ")";
  }
};

// All |G| characters, lexicographic in (k_1..k_r).
inline std::vector<Character> characters(const FinAbGroup& G) {
  std::vector<Character> out;
  for (const auto& e : G.elements()) out.push_back(Character{G, e});
  return out;
}

// xi_bar(t_i) = xi(pi_bar(e_i)); the variable twist of the substitution
// t_i -> xi_bar(t_i) t_i.
inline std::vector<CycloNum> pullback_character(const Character& xi, const EpiToG& pi_bar,
                                                long num_vars, const CycloFieldPtr& field) {
  std::size_t n = static_cast<std::size_t>(num_vars);
  if (pi_bar.group.rank() > 0 && pi_bar.num_cols() != n)
    throw ValidationError("pi_bar column count does not match the variable count");
  std::vector<CycloNum> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<long> col(pi_bar.group.rank());
    for (std::size_t r = 0; r < pi_bar.group.rank(); ++r) {
      long q = pi_bar.group.invariant_factors[r];
      col[r] = ((pi_bar.matrix[r][i] % q) + q) % q;
    }
    out.push_back(xi.value_at(col, field));
  }
  return out;
}

// --- The combined tensor representation -------------------------------------

struct TensorRep {
  long num_vars = 0;
  long dim = 1;
  CycloFieldPtr field;
  std::vector<ExpVec> monomial;      // phi(gen)
  std::vector<CycloNum> scalar;      // character twist, default 1
  std::vector<Matrix<CycloNum>> mat; // rho(gen)
  std::vector<Matrix<CycloNum>> mat_inv;
  Lattice unit_lattice;              // phi image; unit monomials live here

  static TensorRep make(const AbelMap& phi, const MatRep& rho, const CycloFieldPtr& field) {
    TensorRep t;
    t.num_vars = phi.num_vars;
    t.dim = rho.dim;
    t.field = field;
    t.monomial = phi.images;
    t.scalar.assign(phi.images.size(), CycloNum::one(field));
    t.mat = rho.images;
    for (const auto& m : t.mat) t.mat_inv.push_back(MatRep::invert(m, field));
    t.unit_lattice = phi.image_lattice();
    return t;
  }

  std::size_t num_generators() const { return monomial.size(); }

  // Phi(gen^{±1}) as a dim x dim matrix over Laurent polynomials.
  Matrix<LaurentPoly> of_letter(const Letter& l) const {
    std::size_t j = static_cast<std::size_t>(l.gen);
    Matrix<LaurentPoly> out(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim),
                            LaurentPoly::zero(num_vars, field));
    ExpVec e = l.sign > 0 ? monomial[j] : exp_neg(monomial[j]);
    CycloNum c = l.sign > 0 ? scalar[j] : scalar[j].inverse();
    const Matrix<CycloNum>& m = l.sign > 0 ? mat[j] : mat_inv[j];
    for (std::size_t a = 0; a < m.rows(); ++a)
      for (std::size_t b = 0; b < m.cols(); ++b)
        if (!m.at(a, b).is_zero())
          out.at(a, b) = LaurentPoly::monomial(num_vars, e, c * m.at(a, b));
    return out;
  }

  Matrix<LaurentPoly> of_word(const Word& w) const {
    Matrix<LaurentPoly> acc = Matrix<LaurentPoly>::identity(
        static_cast<std::size_t>(dim), LaurentPoly::one(num_vars, field));
    for (const auto& l : w.letters()) acc = acc * of_letter(l);
    return acc;
  }

  void validate_relators(const Presentation& p) const {
    Matrix<LaurentPoly> id = Matrix<LaurentPoly>::identity(
        static_cast<std::size_t>(dim), LaurentPoly::one(num_vars, field));
    for (const auto& r : p.relators)
      if (!(of_word(r) == id))
        throw ValidationError("combined representation does not satisfy every relator");
  }
};

// (phi tensor rho) tensor xi: multiplies each generator's scalar twist by
// xi_bar(t^{phi(gen)}); equivalent to substituting t_i -> xi_bar(t_i) t_i.
inline TensorRep twist(const TensorRep& base, const std::vector<CycloNum>& xi_bar) {
  if (static_cast<long>(xi_bar.size()) != base.num_vars)
    throw ValidationError("twist has wrong variable count");
  TensorRep t = base;
  for (std::size_t j = 0; j < t.num_generators(); ++j) {
    CycloNum f = CycloNum::one(t.field);
    for (std::size_t i = 0; i < xi_bar.size(); ++i)
      if (t.monomial[j][i] != 0) f *= xi_bar[i].pow(t.monomial[j][i]);
    t.scalar[j] = t.scalar[j] * f;
  }
  return t;
}

// Pullback of (phi, rho) along the inclusion of the cover subgroup.
struct PulledBack {
  AbelMap phi_hat;
  MatRep rho_hat;
};

inline PulledBack pullback(const SubgroupData& sub, const AbelMap& phi, const MatRep& rho,
                           const EpiToG& pi_bar, const CycloFieldPtr& field) {
  PulledBack out;
  out.phi_hat.num_vars = phi.num_vars;
  out.phi_hat.is_cover = true;
  out.rho_hat.dim = rho.dim;
  for (const auto& w : sub.inclusion) {
    ExpVec v = phi.of_word(w);
    if (!pi_bar.in_kernel(v))
      throw std::logic_error("pullback image escapes the kernel sublattice");
    out.phi_hat.images.push_back(std::move(v));
    out.rho_hat.images.push_back(rho.of_word(w, field));
  }
  // The image lattice must be exactly ker(pi_bar), of index |G|.
  Lattice image = out.phi_hat.image_lattice();
  Lattice kernel = pi_bar.kernel_lattice(phi.num_vars);
  if (!(kernel.contains_lattice(image) && image.contains_lattice(kernel)))
    throw std::logic_error("pullback image lattice differs from ker(pi_bar)");
  return out;
}

}  // namespace polytor
