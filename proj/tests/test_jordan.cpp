#include <set>

#include "doctest.h"
#include "ringline/jordan.hpp"
#include "ringline/presets.hpp"

using namespace ringline;

namespace {

struct BruteClass {
  bool jordan = true, homo = true, anti = true;
};

BruteClass classify(const JordanMap& m) {
  const FiniteRing& R = *m.domain;
  const FiniteRing& S = *m.codomain;
  BruteClass c;
  for (Elem a = 0; a < R.size(); ++a)
    for (Elem b = 0; b < R.size(); ++b) {
      const Elem ab = m(R.mul(a, b));
      c.homo = c.homo && ab == S.mul(m(a), m(b));
      c.anti = c.anti && ab == S.mul(m(b), m(a));
      c.jordan = c.jordan && m(R.mul(R.mul(a, b), a)) == S.mul(S.mul(m(a), m(b)), m(a));
    }
  return c;
}

}  // namespace

TEST_CASE("corpus maps classified like a brute-force check") {
  struct Expect {
    const char* label;
    bool homo, anti;
  };
  const Expect expect[] = {
      {"identity-zmod6", true, true},   {"reduction-zmod4-zmod2", true, true}, {"frobenius-gf4", true, true},
      {"transpose-m2f2", false, true},  {"identity-x-transpose-m2f2", false, false},
      {"swap-ext-gf2", false, false},   {"swap-ext-gf3", false, false},
      {"kill-e3-ext-gf3", false, false},
  };
  auto corpus = map_corpus();
  REQUIRE(corpus.size() == std::size(expect));
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CAPTURE(corpus[i].label);
    CHECK(corpus[i].label == expect[i].label);
    JordanMap m = build_preset(corpus[i]);
    BruteClass b = classify(m);
    CHECK(m.jordan);
    CHECK(b.jordan);
    CHECK(m.additive);
    CHECK(m.unital);
    CHECK(m.homomorphism == b.homo);
    CHECK(m.antihomomorphism == b.anti);
    CHECK(m.homomorphism == expect[i].homo);
    CHECK(m.antihomomorphism == expect[i].anti);
    if (!m.homomorphism) CHECK(m.not_homo_witness);
    if (!m.antihomomorphism) CHECK(m.not_anti_witness);
  }
}

TEST_CASE("non-Jordan tables are rejected") {
  RingPtr z4 = build_ring(RingSpec::zmod(4));
  RingPtr m2 = build_ring(RingSpec::matrix(RingSpec::gf(2), 2));
  // Not additive.
  CHECK_THROWS_AS(build_map(MapSpec::from_table({{"0", "0"}, {"1", "1"}, {"2", "0"}, {"3", "3"}}), z4, z4),
                  JordanError);
  // Not unital.
  CHECK_THROWS_AS(build_map(MapSpec::from_table({{"0", "0"}, {"1", "3"}, {"2", "2"}, {"3", "1"}}), z4, z4),
                  JordanError);
  // Additive and unital but not Jordan: e_21 -> e_12 with the other matrix
  // units fixed, since e_21 e_12 e_21 = e_21 while e_12^3 = 0.
  std::vector<std::pair<std::string, std::string>> entries;
  for (Elem a = 0; a < m2->size(); ++a) {
    auto c = m2->coords(a);
    std::vector<Elem> img{c[0], c[1] ^ c[2], 0, c[3]};
    entries.emplace_back(m2->name(a), m2->name(m2->from_coords(img)));
  }
  CHECK_THROWS_AS(build_map(MapSpec::from_table(entries), m2, m2), JordanError);
}

TEST_CASE("image closure of the e_3 -> 0 map") {
  JordanMap m = build_preset(herzer_kill_e3("kill-e3-ext-gf3", RingSpec::gf(3)));
  std::set<Elem> image(m.values.begin(), m.values.end());
  CHECK(image.size() == 27);
  CHECK(!m.image_closure.closed);
  CHECK(m.image_closure.elements.size() == 81);
  const Elem e3 = m.codomain->parse("(0,0,0,1)");
  CHECK(image.count(e3) == 0);
  CHECK(m.image_closure.witness == e3);
  CHECK(!m.surjective_onto_image_ring());
}

TEST_CASE("apply_seq commutes with word_inverse") {
  JordanMap m = build_preset(herzer_swap("swap", RingSpec::gf(3)));
  std::vector<Elem> T{3, 10, 77};
  CHECK(apply_seq(m, word_inverse(*m.domain, T)) == word_inverse(*m.codomain, apply_seq(m, T)));
  CHECK(check_apply_seq_hat(m, 2, {}).pass);
}

TEST_CASE("J-polynomial sweeps hold on the corpus") {
  SweepBudget budget;
  for (const auto& preset : map_corpus()) {
    JordanMap m = build_preset(preset);
    CAPTURE(preset.label);
    CHECK(verify_unit_behavior(m).pass);
    for (int n = 1; n <= 3; ++n) {
      std::vector<const FreePoly*> f{&e_ij(1, n), &te_ij(1, n - 1)};
      CHECK(test_j_polynomial(f, "e*te", m, 3, budget).pass);
      std::vector<const FreePoly*> g{&e_ij(1, n), &te_ij(1, n)};
      CHECK(test_j_polynomial(g, "e*te", m, 3, budget).pass);
    }
    for (const auto& r : test_thm_inv0(m, 3, budget)) CHECK(r.pass);
    CHECK(check_centre_transfer(m, 3).pass);
  }
}

TEST_CASE("e_1^2 alone is not a J-polynomial for a proper map") {
  // e_1^2 = x_1 x_2 - 1 is not symmetric, so an antihomomorphic factor breaks it.
  JordanMap m = build_preset(map_preset("identity-x-transpose-m2f2"));
  std::vector<const FreePoly*> f{&e_ij(1, 2)};
  CheckResult r = test_j_polynomial(f, "e", m, 2, {});
  CHECK(!r.pass);
  CHECK(!r.witness.empty());
}

TEST_CASE("E-map consistency") {
  RingPtr z6 = build_ring(RingSpec::zmod(6));
  CHECK(check_E_map(build_map(MapSpec::identity(), z6, z6)).well_defined);
  JordanMap swap = build_preset(herzer_swap("swap", RingSpec::gf(3)));
  EMapConsistency c = check_E_map(swap);
  REQUIRE(!c.well_defined);
  const auto& [T, V] = *c.violation;
  const FiniteRing& R = *swap.domain;
  CHECK(E_word(R, T) == E_word(R, V));
  CHECK(E_word(R, apply_seq(swap, T)) != E_word(R, apply_seq(swap, V)));
}
