#include "polytor/polytor.hpp"
#include "support/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace polytor;

namespace {

Presentation trefoil() { return presentation_from_braid({1, 1, 1}, 2); }

Presentation hopf() {
  Presentation p;
  p.generator_names = {"a", "b"};
  p.relators.push_back(parse_word("a b A B", p.generator_names));
  p.meridian_indices = std::vector<int>{0, 1};
  return p;
}

CoverSpec cyclic_cover(long q) { return CoverSpec{FinAbGroup{{q}}, EpiToG{FinAbGroup{{q}}, {{1}}}}; }

LaurentPoly trefoil_delta(const CycloFieldPtr& f) {
  LaurentPoly t = LaurentPoly::variable(1, 0, f);
  return t * t - t + LaurentPoly::one(1, f);
}

}  // namespace

TEST_CASE("rhs product over the trivial group is the untwisted torsion") {
  auto field = CycloField::make(1);
  Presentation p = trefoil();
  AbelMap phi = default_phi(p);
  MatRep rho = MatRep::trivial(p, field);
  CoverSpec cover{FinAbGroup{}, EpiToG{FinAbGroup{}, {}}};
  auto [prod, factors] = rhs_product(p, phi, rho, cover, field);
  REQUIRE(factors.size() == 1);
  TorsionValue untwisted = wada_torsion(p, TensorRep::make(phi, rho, field));
  CHECK(ratfunc_equal(prod.value, untwisted.value));
}

TEST_CASE("rhs product for the trefoil Z/2 cover matches the substitution oracle") {
  auto field = CycloField::make(2);
  Presentation p = trefoil();
  AbelMap phi = default_phi(p);
  MatRep rho = MatRep::trivial(p, field);
  auto [prod, factors] = rhs_product(p, phi, rho, cyclic_cover(2), field);
  REQUIRE(factors.size() == 2);

  // independent route: T(t) * T(-t) computed by variable scaling
  TorsionValue base = wada_torsion(p, TensorRep::make(phi, rho, field));
  RatFunc oracle = base.value * base.value.vars_scaled({-CycloNum::one(field)});
  CHECK(ratfunc_equal(prod.value, oracle));

  // frozen expected value (t^4 + t^2 + 1)/(-(t^2 - 1)) up to unit
  LaurentPoly t = LaurentPoly::variable(1, 0, field);
  LaurentPoly one = LaurentPoly::one(1, field);
  RatFunc expect(t * t * t * t + t * t + one, -(t * t - one));
  CHECK(equal_up_to_unit(prod, TorsionValue{expect, UnitGroup::full(1, 2)}).has_value());
}

TEST_CASE("rhs product for the trefoil Z/3 cover matches exact expansion") {
  auto field = CycloField::make(3);
  Presentation p = trefoil();
  AbelMap phi = default_phi(p);
  MatRep rho = MatRep::trivial(p, field);
  auto [prod, factors] = rhs_product(p, phi, rho, cyclic_cover(3), field);
  REQUIRE(factors.size() == 3);

  TorsionValue base = wada_torsion(p, TensorRep::make(phi, rho, field));
  RatFunc oracle = base.value;
  for (long k = 1; k < 3; ++k)
    oracle = oracle * base.value.vars_scaled({cyclo_embed_root_of_unity(3, k, field)});
  CHECK(ratfunc_equal(prod.value, oracle));

  // numerator is the branched product of the Alexander polynomial; the
  // denominator product over the cube roots of unity is t^3 - 1
  LaurentPoly num_expect = branched_product(trefoil_delta(field), 3);
  LaurentPoly t = LaurentPoly::variable(1, 0, field);
  LaurentPoly one = LaurentPoly::one(1, field);
  // denominator product: (t-1)(zeta t - 1)(zeta^2 t - 1) = t^3 - 1
  RatFunc expect(num_expect, t * t * t - one);
  CHECK(equal_up_to_unit(prod, TorsionValue{expect, UnitGroup::full(1, 3)}).has_value());
}

TEST_CASE("rhs product is independent of the multiplication order") {
  auto field = CycloField::make(4);
  Presentation p = trefoil();
  AbelMap phi = default_phi(p);
  MatRep rho = MatRep::trivial(p, field);
  auto [prod, factors] = rhs_product(p, phi, rho, cyclic_cover(4), field);
  RatFunc reversed = RatFunc::one(1, field);
  for (auto it = factors.rbegin(); it != factors.rend(); ++it)
    reversed = reversed * it->value;
  CHECK(ratfunc_equal(prod.value, reversed));
}

TEST_CASE("lhs lands in the sublattice of t^q rational functions") {
  auto field = CycloField::make(4);
  Presentation p = trefoil();
  AbelMap phi = default_phi(p);
  MatRep rho = MatRep::trivial(p, field);
  for (long q : {2L, 4L}) {
    TorsionValue lhs = lhs_direct(p, phi, rho, cyclic_cover(q), field);
    CHECK(in_tq_subfield(lhs.value, q));
    CHECK(!in_tq_subfield(wada_torsion(p, TensorRep::make(phi, rho, field)).value, q));
  }
}

TEST_CASE("cover verification on core fixtures") {
  SECTION("trefoil Z/2, trivial rho") {
    auto field = CycloField::make(2);
    Presentation p = trefoil();
    CoverReport r = verify_cover(p, default_phi(p), MatRep::trivial(p, field), cyclic_cover(2),
                                 field);
    CHECK(r.equal);
    REQUIRE(r.lhs.has_value());
    CHECK(r.factors.size() == 2);
    CHECK(r.factor_labels[0] == "(0)");
    CHECK(r.factor_labels[1] == "(1)");
  }

  SECTION("trefoil Z/2, braid representation") {
    auto field = CycloField::make(2);
    Presentation p = trefoil();
    MatRep rho;
    rho.dim = 2;
    Matrix<CycloNum> a(2, 2, CycloNum::zero(field));
    a.at(0, 0) = CycloNum::one(field);
    a.at(0, 1) = CycloNum::one(field);
    a.at(1, 1) = CycloNum::one(field);
    Matrix<CycloNum> b(2, 2, CycloNum::zero(field));
    b.at(0, 0) = CycloNum::one(field);
    b.at(1, 0) = -CycloNum::one(field);
    b.at(1, 1) = CycloNum::one(field);
    rho.images = {a, b};
    rho.validate(p, field);
    CoverReport r = verify_cover(p, default_phi(p), rho, cyclic_cover(2), field);
    CHECK(r.equal);
  }

  SECTION("hopf link Z/2 x Z/2") {
    auto field = CycloField::make(2);
    Presentation p = hopf();
    CoverSpec cover{FinAbGroup{{2, 2}}, EpiToG{FinAbGroup{{2, 2}}, {{1, 0}, {0, 1}}}};
    CoverReport r = verify_cover(p, default_phi(p), MatRep::trivial(p, field), cover, field);
    CHECK(r.equal);
    CHECK(r.factors.size() == 4);
  }

  SECTION("unknot Z/3") {
    auto field = CycloField::make(3);
    Presentation p;
    p.generator_names = {"a"};
    CoverReport r = verify_cover(p, default_phi(p), MatRep::trivial(p, field), cyclic_cover(3),
                                 field);
    CHECK(r.equal);
    REQUIRE(r.lhs.has_value());
    CHECK(in_tq_subfield(r.lhs->value, 3));
  }
}

TEST_CASE("branched product frozen examples") {
  auto field = CycloField::make(6);
  LaurentPoly one = LaurentPoly::one(1, field);
  CHECK(branched_product(one, 6) == one);
  auto f5 = CycloField::make(5);
  CHECK(branched_product(LaurentPoly::one(1, f5), 5) == LaurentPoly::one(1, f5));

  LaurentPoly delta = trefoil_delta(field);
  LaurentPoly t = LaurentPoly::variable(1, 0, field);
  CHECK(branched_product(delta, 2) == t.shifted(ExpVec{3}) + t * t + one);  // t^4 + t^2 + 1

  // q = 3: expansion oracle (t^2 - t + 1)(z^2 t^2 - z t + 1)(z t^2 - z^2 t + 1)
  CycloNum z3 = cyclo_embed_root_of_unity(3, 1, field);
  LaurentPoly f1 = delta;
  LaurentPoly f2 = delta.vars_scaled({z3});
  LaurentPoly f3 = delta.vars_scaled({z3 * z3});
  LaurentPoly prod = f1 * f2 * f3;
  LaurentPoly got = branched_product(delta, 3);
  CHECK(got == prod);
  // the exact expansion is (t^3 + 1)^2 = t^6 + 2t^3 + 1, a polynomial in t^3
  LaurentPoly two_t3 = LaurentPoly::monomial(1, ExpVec{3}, CycloNum(field, Rational(2)));
  CHECK(got == t.shifted(ExpVec{5}) + two_t3 + one);
  // consistency with the homology order of the 3-fold branched cover
  CHECK(got.evaluated_at({CycloNum::one(field)}) == CycloNum(field, Rational(4)));
}

TEST_CASE("branched product output is Galois stable") {
  auto field = CycloField::make(12);
  LaurentPoly t = LaurentPoly::variable(1, 0, field);
  LaurentPoly delta = t * t * t - t - LaurentPoly::one(1, field);
  for (long q : {2L, 3L, 4L}) {
    LaurentPoly prod = branched_product(delta, q);
    for (long j : {5L, 7L, 11L}) CHECK(prod.coeff_galois(j) == prod);
  }
}

TEST_CASE("branched product needs the right conductor") {
  auto field = CycloField::make(2);
  CHECK_THROWS_AS(branched_product(trefoil_delta(field), 3), ConductorError);
}

TEST_CASE("homology order frozen examples") {
  auto f6 = CycloField::make(6);
  LaurentPoly delta = trefoil_delta(f6);
  auto h2 = homology_order(delta, 2);
  REQUIRE(h2.has_value());
  CHECK(*h2 == 3);  // knot determinant |Delta(-1)|
  auto h3 = homology_order(delta, 3);
  REQUIRE(h3.has_value());
  CHECK(*h3 == 4);  // |1 - sqrt(-3)|^2 expanded in Q(zeta_3)

  CHECK(*homology_order(LaurentPoly::one(1, f6), 6) == 1);
  CHECK(*homology_order(LaurentPoly::one(1, CycloField::make(4)), 4) == 1);

  // Delta = t + 1 vanishes at zeta_2: infinite homology
  LaurentPoly t = LaurentPoly::variable(1, 0, f6);
  CHECK(!homology_order(t + LaurentPoly::one(1, f6), 2).has_value());

  // non-integer coefficients rejected
  LaurentPoly half = LaurentPoly::constant(1, CycloNum(f6, Rational(1, 2)));
  CHECK_THROWS_AS(homology_order(half, 2), ValidationError);
}

TEST_CASE("rhs product reports the offending character when a factor is non-acyclic") {
  auto field = CycloField::make(2);
  Presentation degenerate;
  degenerate.generator_names = {"a", "b"};
  degenerate.relators.push_back(Word());
  AbelMap phi{1, {ExpVec{1}, ExpVec{1}}, false};
  MatRep rho = MatRep::trivial(degenerate, field);
  try {
    rhs_product(degenerate, phi, rho, cyclic_cover(2), field);
    FAIL("expected NonAcyclicError");
  } catch (const NonAcyclicError& e) {
    CHECK(e.offending_character == "(0)");
  }
}
