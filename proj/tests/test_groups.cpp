#include "polytor/polytor.hpp"
#include "support/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace polytor;

namespace {

const std::vector<PDCrossing> kTrefoilPD{{1, 4, 2, 5}, {3, 6, 4, 1}, {5, 2, 6, 3}};
const std::vector<PDCrossing> kHopfPD{{4, 1, 3, 2}, {2, 3, 1, 4}};

Presentation two_gen(const std::string& relator) {
  Presentation p;
  p.generator_names = {"a", "b"};
  if (!relator.empty()) p.relators.push_back(parse_word(relator, p.generator_names));
  return p;
}

}  // namespace

TEST_CASE("word parsing") {
  std::vector<std::string> names{"a", "b"};
  Word w = parse_word("a b A", names);
  CHECK(w.length() == 3);
  CHECK(w.letters()[2] == Letter{0, -1});
  CHECK(parse_word("a A", names).empty());
  CHECK(parse_word("a b B A", names).empty());
  CHECK(parse_word("a^2", names) == Word({Letter{0, 1}, Letter{0, 1}}));
  CHECK(parse_word("b^-1", names) == Word::generator(1, -1));
  CHECK(parse_word("A^-1", names) == Word::generator(0, 1));
  CHECK_THROWS_WITH(parse_word("a c", names), Catch::Matchers::ContainsSubstring("position 2"));
  CHECK_THROWS_AS(parse_word("a^x", names), ValidationError);
}

TEST_CASE("free reduction is idempotent and respects concatenation") {
  oracles::Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    Word u = rng.word(3, 10), v = rng.word(3, 10);
    Word uv = u * v;
    // reducing the raw concatenation equals multiplying the reduced words
    std::vector<Letter> raw = u.letters();
    raw.insert(raw.end(), v.letters().begin(), v.letters().end());
    CHECK(Word(std::move(raw)) == uv);
    CHECK((u * u.inverse()).empty());
    CHECK(uv.inverse() == v.inverse() * u.inverse());
  }
}

TEST_CASE("cyclic reduction strips conjugating pairs") {
  std::vector<std::string> names{"a", "b"};
  Word w = parse_word("a b a b^-1 a^-1", names);
  Word c = w.cyclically_reduced();
  CHECK(c == parse_word("a", names));  // strips both conjugating layers
  CHECK(c.cyclically_reduced() == c);
  CHECK(parse_word("b a b^-1", names).cyclically_reduced() == parse_word("a", names));
}

TEST_CASE("wirtinger presentation of the trefoil diagram") {
  Presentation p = wirtinger_from_pd(kTrefoilPD);
  CHECK(p.num_generators() == 3);
  CHECK(p.relators.size() == 2);
  CHECK(p.deficiency() == 1);
  Abelianization ab = abelianization(p);
  CHECK(ab.rank == 1);
  CHECK(ab.torsion.empty());
  for (const auto& img : ab.phi_images) CHECK(img == ExpVec{1});
  REQUIRE(p.meridian_indices.has_value());
  CHECK(p.meridian_indices->size() == 1);
}

TEST_CASE("wirtinger presentation of the unknot and the Hopf link") {
  Presentation u = wirtinger_from_pd({});
  CHECK(u.num_generators() == 1);
  CHECK(u.relators.empty());

  Presentation h = wirtinger_from_pd(kHopfPD);
  CHECK(h.num_generators() == 2);
  CHECK(h.relators.size() == 1);
  Abelianization ab = abelianization(h);
  CHECK(ab.rank == 2);
  CHECK(ab.phi_images[0] == ExpVec{1, 0});
  CHECK(ab.phi_images[1] == ExpVec{0, 1});
  REQUIRE(h.meridian_indices.has_value());
  CHECK(h.meridian_indices->size() == 2);
}

TEST_CASE("wirtinger rank equals the number of link components") {
  CHECK(abelianization(wirtinger_from_pd(kTrefoilPD)).rank == 1);
  CHECK(abelianization(wirtinger_from_pd(kHopfPD)).rank == 2);
}

TEST_CASE("pd ingestion rejects bad codes") {
  CHECK_THROWS_AS(wirtinger_from_pd({{1, 2, 3, 9}}), ValidationError);
  CHECK_THROWS_AS(wirtinger_from_pd({{1, 1, 1, 1}}), ValidationError);
}

TEST_CASE("braid closures") {
  Presentation tre = presentation_from_braid({1, 1, 1}, 2);
  CHECK(tre.num_generators() == 2);
  CHECK(tre.relators.size() == 1);
  CHECK(abelianization(tre).rank == 1);

  Presentation unk = presentation_from_braid({1}, 2);
  CHECK(unk.deficiency() == 1);
  CHECK(abelianization(unk).rank == 1);

  // [1, -1] is the trivial braid; its trace closure is the 2-component
  // unlink, whose exterior group is free of rank 2.
  Presentation unlink = presentation_from_braid({1, -1}, 2);
  CHECK(abelianization(unlink).rank == 2);
  REQUIRE(unlink.meridian_indices.has_value());
  CHECK(unlink.meridian_indices->size() == 2);

  Presentation fig8 = presentation_from_braid({1, -2, 1, -2}, 3);
  CHECK(fig8.num_generators() == 3);
  CHECK(fig8.relators.size() == 2);
  CHECK(abelianization(fig8).rank == 1);
  REQUIRE(fig8.meridian_indices.has_value());
  CHECK(fig8.meridian_indices->size() == 1);  // a knot

  CHECK_THROWS_AS(presentation_from_braid({1}, 1), ValidationError);
  CHECK_THROWS_AS(presentation_from_braid({3}, 3), ValidationError);
}

TEST_CASE("abelianization examples") {
  Presentation hopf = two_gen("a b a^-1 b^-1");
  Abelianization ab = abelianization(hopf);
  CHECK(ab.rank == 2);

  Presentation torus = two_gen("");
  torus.generator_names = {"a"};
  torus.relators.push_back(parse_word("a^2", torus.generator_names));
  CHECK_THROWS_WITH(abelianization(torus),
                    Catch::Matchers::ContainsSubstring("no free abelianization"));

  // phi kills every relator by construction
  Presentation fig8 = presentation_from_braid({1, -2, 1, -2}, 3);
  Abelianization f = abelianization(fig8);
  for (const auto& r : fig8.relators) CHECK(exp_is_zero(phi_of_word(f.phi_images, r, f.rank)));
}

TEST_CASE("epi validation") {
  FinAbGroup z4{{4}};
  EpiToG bad{z4, {{2}}};
  CHECK_THROWS_AS(bad.validate(1), ValidationError);
  EpiToG good{z4, {{1}}};
  good.validate(1);
  EpiToG z22{FinAbGroup{{2, 2}}, {{1, 0}, {0, 1}}};
  z22.validate(2);
  CHECK(z22.kernel_lattice(2).index_in_ambient() == 4);
  EpiToG bad22{FinAbGroup{{2, 2}}, {{1, 1}, {1, 1}}};
  CHECK_THROWS_AS(bad22.validate(2), ValidationError);
}

TEST_CASE("reidemeister-schreier on the trefoil double cover") {
  Presentation p = presentation_from_braid({1, 1, 1}, 2);
  Abelianization ab = abelianization(p);
  EpiToG epi{FinAbGroup{{2}}, {{1}}};

  SubgroupData sub = reidemeister_schreier(p, ab.phi_images, ab.rank, epi);
  CHECK(sub.index == 2);
  CHECK(sub.coset_reps.size() == 2);
  CHECK(sub.presentation.deficiency() == 1);
  CHECK(sub.presentation.num_generators() == 2);
  CHECK(sub.presentation.relators.size() == 1);

  // Euler characteristic of the presentation complex is preserved (= 0)
  CHECK(1 - static_cast<long>(sub.presentation.num_generators()) +
            static_cast<long>(sub.presentation.relators.size()) ==
        0);

  // every inclusion image lands in ker(pi_bar . phi)
  for (const auto& w : sub.inclusion)
    CHECK(epi.in_kernel(phi_of_word(ab.phi_images, w, ab.rank)));
}

TEST_CASE("trivial cover returns the presentation itself") {
  Presentation p = presentation_from_braid({1, 1, 1}, 2);
  Abelianization ab = abelianization(p);
  EpiToG epi{FinAbGroup{}, {}};
  SubgroupData sub = reidemeister_schreier(p, ab.phi_images, ab.rank, epi);
  CHECK(sub.index == 1);
  CHECK(sub.presentation.generator_names == p.generator_names);
  CHECK(sub.presentation.relators == p.relators);
  for (std::size_t j = 0; j < p.num_generators(); ++j)
    CHECK(sub.inclusion[j] == Word::generator(static_cast<int>(j)));
}

TEST_CASE("hopf link Z/2 x Z/2 cover") {
  Presentation p = two_gen("a b a^-1 b^-1");
  p.meridian_indices = std::vector<int>{0, 1};
  Abelianization ab = abelianization(p);
  EpiToG epi{FinAbGroup{{2, 2}}, {{1, 0}, {0, 1}}};
  SubgroupData sub = reidemeister_schreier(p, ab.phi_images, ab.rank, epi);
  CHECK(sub.index == 4);
  CHECK(sub.presentation.deficiency() == 1);
  Abelianization sab = abelianization(sub.presentation);
  CHECK(sab.rank == 2);

  // phi(ker) equals ker(pi_bar) as a sublattice: via pullback lattice checks
  AbelMap phi{ab.rank, ab.phi_images, false};
  auto field = CycloField::make(2);
  MatRep rho = MatRep::trivial(p, field);
  PulledBack pb = pullback(sub, phi, rho, epi, field);
  CHECK(pb.phi_hat.image_lattice().index_in_ambient() == 4);
}

TEST_CASE("unknot q-fold cover has a single generator") {
  Presentation p;
  p.generator_names = {"a"};
  Abelianization ab = abelianization(p);
  for (long q : {2L, 3L, 5L}) {
    EpiToG epi{FinAbGroup{{q}}, {{1}}};
    SubgroupData sub = reidemeister_schreier(p, ab.phi_images, ab.rank, epi);
    CHECK(sub.presentation.num_generators() == 1);
    CHECK(sub.presentation.relators.empty());
    CHECK(sub.inclusion[0] == Word::generator(0).pow(q));
  }
}
