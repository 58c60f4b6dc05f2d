#include <set>

#include "doctest.h"
#include "ringline/elemgrp.hpp"
#include "ringline/jordan.hpp"
#include "ringline/presets.hpp"

using namespace ringline;

namespace {

// Number of 2x2 matrices of determinant 1 over a commutative ring.
std::size_t count_sl2(const FiniteRing& R) {
  std::size_t count = 0;
  const auto n = static_cast<Elem>(R.size());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        for (Elem d = 0; d < n; ++d) count += R.sub(R.mul(a, d), R.mul(b, c)) == R.one();
  return count;
}

}  // namespace

TEST_CASE("E_word by hand") {
  RingPtr R = build_ring(RingSpec::zmod(6));
  std::vector<Elem> T{2, 3};
  // [[2,1],[-1,0]] [[3,1],[-1,0]] = [[5,2],[-3,-1]].
  CHECK(E_word(*R, T) == Mat2{5, 2, 3, 5});
  CHECK(E_word(*R, std::vector<Elem>{}) == identity(*R));
  CHECK(mul_E(*R, E(*R, 2), 3) == E_word(*R, T));
  CHECK(act_E(*R, Row{1, 0}, 4) == Row{4, 1});
}

TEST_CASE("E_2 equals SL_2 over commutative corpus rings") {
  for (auto spec : {RingSpec::zmod(4), RingSpec::zmod(6), gf4(), RingSpec::gf(3)}) {
    RingPtr R = build_ring(spec);
    CAPTURE(R->description());
    GroupTable g = enumerate_E2(*R);
    CHECK(g.size() == count_sl2(*R));
    for (std::size_t i = 0; i < g.size(); i += 7) CHECK(E_word(*R, g.witness(i)) == g.elements[i]);
  }
}

TEST_CASE("enumerate_E2 respects its cap") {
  RingPtr R = build_ring(RingSpec::zmod(6));
  CHECK_THROWS_AS(enumerate_E2(*R, 10), RingError);
}

TEST_CASE("inversion matches a brute-force search") {
  RingPtr R = build_ring(RingSpec::matrix(RingSpec::gf(2), 2));
  const auto n = static_cast<Elem>(R->size());
  std::size_t invertible = 0;
  for (Elem a = 0; a < n; a += 3)
    for (Elem b = 0; b < n; b += 5)
      for (Elem c = 0; c < n; ++c)
        for (Elem d = 0; d < n; d += 2) {
          Mat2 m{a, b, c, d};
          auto inv = try_invert(*R, m);
          if (inv) {
            ++invertible;
            CHECK(mul(*R, m, *inv) == identity(*R));
            CHECK(mul(*R, *inv, m) == identity(*R));
          } else {
            auto r = invert(*R, m);
            REQUIRE(std::holds_alternative<NonInvertible>(r));
            Row k = std::get<NonInvertible>(r).kernel;
            CHECK((k[0] != 0 || k[1] != 0));
            CHECK(act(*R, k, m) == Row{0, 0});
          }
        }
  CHECK(invertible > 0);
}

TEST_CASE("word_inverse inverts") {
  RingPtr R = build_ring(exterior_over(RingSpec::gf(3)));
  std::vector<Elem> T{5, 17, 40};
  ParamSeq W = word_inverse(*R, T);
  CHECK(W.size() == 3 * T.size());
  CHECK(mul(*R, E_word(*R, W), E_word(*R, T)) == identity(*R));
}

TEST_CASE("centre H over small fields and Z/4") {
  struct Expect {
    RingSpec spec;
    std::size_t h;
  };
  // diag(a,a) has determinant a^2 = 1: a = ±1 in Z/4 and gf(3), a = 1 in gf(4).
  for (auto [spec, h] : {Expect{RingSpec::zmod(4), 2}, Expect{RingSpec::gf(3), 2}, Expect{gf4(), 1}}) {
    RingPtr R = build_ring(spec);
    GroupTable g = enumerate_E2(*R);
    CentreH H = centre_H(*R, g);
    CHECK(H.elements.size() == h);
    CHECK(H.agrees_with_commutant);
  }
}

TEST_CASE("identity relations match brute-force enumeration") {
  RingPtr R = build_ring(RingSpec::zmod(4));
  std::set<ParamSeq> brute;
  for (std::size_t len = 0; len <= 3; ++len)
    for_each_word(4, len, [&](std::span<const std::uint32_t> w) {
      if (E_word(*R, w) == identity(*R)) brute.insert(ParamSeq(w.begin(), w.end()));
    });
  auto found = identity_relations(*R, 3);
  CHECK(std::set<ParamSeq>(found.begin(), found.end()) == brute);
  // E(1)^3 = -I but E(-1)^3 = I.
  CHECK(brute.count(ParamSeq{}) == 1);
  CHECK(brute.count(ParamSeq{1, 1, 1}) == 0);
  CHECK(brute.count(ParamSeq{3, 3, 3}) == 1);
}

TEST_CASE("scalar words land in H") {
  RingPtr R = build_ring(RingSpec::zmod(6));
  std::size_t count = 0;
  for_each_scalar_word(*R, 3, [&](std::span<const Elem> T, Elem a) {
    ++count;
    CHECK(E_word(*R, T) == diag(a, a));
    CHECK(R->is_unit(a));
  });
  CHECK(count > 0);
}

TEST_CASE("N_alpha of a homomorphism is trivial") {
  RingPtr R = build_ring(RingSpec::zmod(6));
  JordanMap id = build_map(MapSpec::identity(), R, R);
  NAlpha n = n_alpha(id.view(), 3);
  CHECK(n.subgroup == std::vector<Mat2>{identity(*R)});
  CHECK(n.relations > 0);
}

TEST_CASE("conjugate of a non-central diagonal matrix") {
  RingPtr R = build_ring(RingSpec::gf(3));
  auto r = find_conjugate_off_diagonal(*R, diag(1, 2));
  REQUIRE(r);
  Mat2 c = E(*R, *r);
  Mat2 conj = mul(*R, mul(*R, *try_invert(*R, c), diag(1, 2)), c);
  CHECK(!is_diagonal(conj));
  CHECK(!find_conjugate_off_diagonal(*R, diag(2, 2)));
}

TEST_CASE("word identity checks pass on the corpus") {
  SweepBudget budget;
  for (const auto& preset : ring_corpus()) {
    RingPtr R = build_ring(preset.spec);
    CAPTURE(preset.label);
    CHECK(check_conjugation_identity(*R, 2, budget).pass);
    CHECK(check_word_closed_form(*R, 3, budget).pass);
    CHECK(check_unit_reversal(*R, 3, budget).pass);
    CHECK(check_word_inverse(*R, 3, budget).pass);
  }
}
