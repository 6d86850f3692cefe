#pragma once

// Both sides of the finite-abelian-cover product formula, computed along
// independent code paths:
//   * rhs_product: product over all characters xi of the deck group of the
//     torsion twisted by the pulled-back character,
//   * lhs_direct: torsion of the cover subgroup presentation obtained by
//     Reidemeister-Schreier, under the pulled-back (phi, rho).
// Plus the classical single-variable corollaries: the branched-cover
// Alexander product and the homology-order evaluation.

#include "polytor/torsion.hpp"

#include <chrono>
#include <future>
#include <optional>
#include <string>
#include <vector>

namespace polytor {

struct CoverSpec {
  FinAbGroup group;
  EpiToG pi_bar;
};

struct CoverReport {
  std::optional<TorsionValue> lhs;  // absent when RS cannot certify deficiency 1
  TorsionValue rhs;
  std::vector<TorsionValue> factors;        // one per character, lexicographic
  std::vector<std::string> factor_labels;   // character labels
  bool equal = false;
  std::optional<UnitWitness> witness;
  std::string lhs_unavailable_reason;
  double lhs_ms = 0, rhs_ms = 0;
};

// Product over all |G| characters of the twisted torsion; factors retained.
// Factors are computed concurrently and multiplied in lexicographic
// character order.
inline std::pair<TorsionValue, std::vector<TorsionValue>> rhs_product(
    const Presentation& p, const AbelMap& phi, const MatRep& rho, const CoverSpec& cover,
    const CycloFieldPtr& field, std::vector<std::string>* labels_out = nullptr) {
  TensorRep base = TensorRep::make(phi, rho, field);
  std::vector<Character> chars = characters(cover.group);

  std::vector<std::future<TorsionValue>> futures;
  futures.reserve(chars.size());
  for (const auto& xi : chars) {
    futures.push_back(std::async(std::launch::async, [&, xi]() {
      TensorRep twisted = twist(base, pullback_character(xi, cover.pi_bar, phi.num_vars, field));
      return wada_torsion(p, twisted, xi.label());
    }));
  }

  std::vector<TorsionValue> factors;
  factors.reserve(chars.size());
  for (std::size_t i = 0; i < futures.size(); ++i) {
    factors.push_back(futures[i].get());  // rethrows NonAcyclicError with the label
    if (labels_out) labels_out->push_back(chars[i].label());
  }

  TorsionValue prod;
  prod.value = RatFunc::one(phi.num_vars, field);
  for (const auto& f : factors) prod.value = prod.value * f.value;
  prod.units = UnitGroup::full(phi.num_vars, field->conductor());
  return {prod, factors};
}

// Torsion of the cover: Reidemeister-Schreier presentation of the kernel
// subgroup with the pulled-back maps; variables remain t_1..t_n and the
// torsion's unit monomials live in the sublattice ker(pi_bar).
inline TorsionValue lhs_direct(const Presentation& p, const AbelMap& phi, const MatRep& rho,
                               const CoverSpec& cover, const CycloFieldPtr& field) {
  SubgroupData sub = reidemeister_schreier(p, phi.images, phi.num_vars, cover.pi_bar);
  PulledBack pb = pullback(sub, phi, rho, cover.pi_bar, field);
  TensorRep rep = TensorRep::make(pb.phi_hat, pb.rho_hat, field);
  return wada_torsion(sub.presentation, rep);
}

inline CoverReport verify_cover(const Presentation& p, const AbelMap& phi, const MatRep& rho,
                                const CoverSpec& cover, const CycloFieldPtr& field) {
  CoverReport report;
  auto clock = []() { return std::chrono::steady_clock::now(); };
  auto ms = [](auto t0, auto t1) {
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
  };

  auto r0 = clock();
  auto [rhs, factors] = rhs_product(p, phi, rho, cover, field, &report.factor_labels);
  report.rhs = std::move(rhs);
  report.factors = std::move(factors);
  report.rhs_ms = ms(r0, clock());

  auto l0 = clock();
  try {
    report.lhs = lhs_direct(p, phi, rho, cover, field);
  } catch (const UnsupportedError& e) {
    report.lhs_unavailable_reason = e.what();
    report.lhs_ms = ms(l0, clock());
    return report;  // partial report: rhs only
  }
  report.lhs_ms = ms(l0, clock());

  report.witness = equal_up_to_unit(*report.lhs, report.rhs);
  report.equal = report.witness.has_value();
  return report;
}

// --- Corollary-style checks and classical formulas --------------------------

// After unit normalization, is f a rational function in t^q? (Single
// variable; the fraction is GCD-reduced, both supports are then checked for
// membership in qZ after monomial shifts.)
inline bool in_tq_subfield(const RatFunc& f, long q) {
  if (f.num_vars() != 1) throw ValidationError("subfield check needs a single variable");
  if (f.is_zero()) return true;
  // Single-variable RatFunc construction keeps fractions GCD-reduced, so the
  // stored pair is coprime and the support test is decisive.
  auto support_ok = [q](const LaurentPoly& p) {
    LaurentPoly s = p.monomial_normalized();
    for (const auto& [e, c] : s.terms()) {
      (void)c;
      if (e[0] % q != 0) return false;
    }
    return true;
  };
  return support_ok(f.num()) && support_ok(f.den());
}

// prod_{k=0}^{q-1} delta(zeta_q^k t): single-variable branched-cover product.
// The result is checked to have rational coefficients and, after unit
// normalization, support in qZ; it is returned normalized (minimum exponent
// zero, lowest coefficient positive).
inline LaurentPoly branched_product(const LaurentPoly& delta, long q) {
  if (delta.num_vars() != 1)
    throw ValidationError("branched product is defined for single-variable polynomials");
  if (q < 1) throw ValidationError("cover order must be >= 1");
  const CycloFieldPtr& field = delta.field();
  LaurentPoly prod = LaurentPoly::one(1, field);
  for (long k = 0; k < q; ++k) {
    CycloNum zk = cyclo_embed_root_of_unity(q, k, field);
    prod = prod * delta.vars_scaled({zk});
  }
  if (prod.is_zero()) return prod;

  LaurentPoly norm = prod.monomial_normalized();
  for (const auto& [e, c] : norm.terms()) {
    if (!c.is_rational())
      throw std::logic_error("branched product has irrational coefficients");
    if (e[0] % q != 0)
      throw std::logic_error("branched product support escapes t^q");
  }
  if (norm.lex_least().second.rational_value() < 0)
    norm = -norm;
  return norm;
}

// |prod_{k=1}^{q-1} delta(zeta_q^k)| evaluated exactly in Q(zeta_N);
// nullopt means the product vanishes ("infinite homology").
inline std::optional<BigInt> homology_order(const LaurentPoly& delta, long q) {
  if (delta.num_vars() != 1)
    throw ValidationError("homology order is defined for single-variable polynomials");
  if (q < 2) throw ValidationError("cover order must be >= 2");
  const CycloFieldPtr& field = delta.field();
  for (const auto& [e, c] : delta.terms()) {
    if (!c.is_rational() || rat_den(c.rational_value()) != 1)
      throw ValidationError("homology order needs integer coefficients");
  }
  CycloNum prod = CycloNum::one(field);
  for (long k = 1; k < q; ++k)
    prod *= delta.evaluated_at({cyclo_embed_root_of_unity(q, k, field)});
  if (prod.is_zero()) return std::nullopt;
  if (!prod.is_rational())
    throw std::logic_error("Galois-stable product failed to be rational");
  Rational r = prod.rational_value();
  if (rat_den(r) != 1)
    throw std::logic_error("homology order product is not an integer");
  BigInt z = rat_num(r);
  return z < 0 ? BigInt(-z) : z;
}

}  // namespace polytor
