#include <algorithm>
#include <set>

#include "doctest.h"
#include "ringline/presets.hpp"
#include "ringline/rings.hpp"

using namespace ringline;

namespace {

std::size_t brute_units(const FiniteRing& R) {
  std::size_t count = 0;
  for (Elem a = 0; a < R.size(); ++a)
    for (Elem b = 0; b < R.size(); ++b)
      if (R.mul(a, b) == R.one() && R.mul(b, a) == R.one()) {
        ++count;
        break;
      }
  return count;
}

std::size_t brute_centre(const FiniteRing& R) {
  std::size_t count = 0;
  for (Elem a = 0; a < R.size(); ++a) {
    bool central = true;
    for (Elem b = 0; b < R.size() && central; ++b) central = R.mul(a, b) == R.mul(b, a);
    count += central;
  }
  return count;
}

}  // namespace

TEST_CASE("corpus ring sizes, units and centres") {
  struct Expect {
    const char* label;
    std::size_t size, units, centre;
    bool commutative;
  };
  // Units of bm(D,3) are the elements with a unit base part; the centre of
  // the exterior algebra over gf(3) is D + D e_3.
  const Expect expect[] = {
      {"zmod4", 4, 2, 4, true},   {"zmod6", 6, 2, 6, true},  {"gf4", 4, 3, 4, true},
      {"m2f2", 16, 6, 2, false},  {"ext-gf2", 16, 8, 16, true}, {"ext-gf3", 81, 54, 9, false},
  };
  auto corpus = ring_corpus();
  REQUIRE(corpus.size() == std::size(expect));
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CAPTURE(corpus[i].label);
    CHECK(corpus[i].label == expect[i].label);
    RingPtr R = build_ring(corpus[i].spec);
    CHECK(R->size() == expect[i].size);
    CHECK(R->units().size() == expect[i].units);
    CHECK(R->centre().size() == expect[i].centre);
    CHECK(R->is_commutative() == expect[i].commutative);
    CHECK(brute_units(*R) == expect[i].units);
    CHECK(brute_centre(*R) == expect[i].centre);
    CHECK(R->check_axioms().pass);
  }
}

TEST_CASE("inverses agree with multiplication") {
  RingPtr R = build_ring(RingSpec::matrix(RingSpec::gf(3), 2));
  CHECK(R->size() == 81);
  CHECK(R->units().size() == 48);
  for (Elem u : R->units()) {
    Elem v = R->inverse(u);
    CHECK(R->mul(u, v) == R->one());
    CHECK(R->mul(v, u) == R->one());
  }
  CHECK_THROWS_AS(R->inverse(R->zero()), RingError);
  CHECK(!R->try_inverse(R->zero()));
}

TEST_CASE("element names round trip") {
  for (const auto& preset : ring_corpus()) {
    RingPtr R = build_ring(preset.spec);
    for (Elem a = 0; a < R->size(); ++a) CHECK(R->parse(R->name(a)) == a);
  }
  RingPtr z6 = build_ring(RingSpec::zmod(6));
  CHECK(z6->parse("-1") == z6->parse("5"));
  CHECK(z6->name(z6->from_integer(-1)) == "5");
  RingPtr g4 = build_ring(gf4());
  CHECK(g4->name(g4->one()) == "(1,0)");
  // x^2 = x + 1 in gf(2)[x]/(x^2 + x + 1).
  Elem x = g4->parse("(0,1)");
  CHECK(g4->mul(x, x) == g4->parse("(1,1)"));
  RingPtr m2 = build_ring(RingSpec::matrix(RingSpec::gf(2), 2));
  CHECK(m2->name(m2->one()) == "[1,0,0,1]");
  CHECK(m2->mul(m2->parse("[0,1,0,0]"), m2->parse("[0,0,1,0]")) == m2->parse("[1,0,0,0]"));
  CHECK_THROWS_AS(m2->parse("[1,0]"), RingError);
}

TEST_CASE("exterior algebra products") {
  RingPtr R = build_ring(exterior_over(RingSpec::gf(3)));
  Elem e1 = R->parse("(0,1,0,0)"), e2 = R->parse("(0,0,1,0)"), e3 = R->parse("(0,0,0,1)");
  CHECK(R->mul(e1, e2) == e3);
  CHECK(R->mul(e2, e1) == R->neg(e3));
  CHECK(R->mul(e1, e1) == R->zero());
  CHECK(R->mul(e3, e1) == R->zero());
  CHECK(R->is_central(e3));
  CHECK(!R->is_central(e1));
  CHECK(R->characteristic() == 3);
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(build_ring(RingSpec::gf(4)), RingError);
  // x^2 + x = x (x + 1) is reducible.
  CHECK_THROWS_AS(build_ring(RingSpec::gf(2, 2, {0, 1})), RingError);
  CHECK_THROWS_AS(build_ring(RingSpec::matrix(RingSpec::gf(2), 3).with_cap(100)), RingError);
  // Non-alternating table: e_1 e_1 = e_1.
  CHECK_THROWS_AS(build_ring(RingSpec::bm(RingSpec::gf(2), 1, {{1, 1, 1, 1}})), RingError);
}

TEST_CASE("large rings compute without tables") {
  RingPtr R = build_ring(RingSpec::matrix(RingSpec::gf(2), 3));
  CHECK(R->size() == 512);
  CHECK(R->units().size() == 168);
  CHECK(R->centre().size() == 2);
  CHECK(R->check_axioms().pass);
}

TEST_CASE("subring closure") {
  RingPtr z6 = build_ring(RingSpec::zmod(6));
  Elem three = z6->parse("3");
  auto c = subring_closure(*z6, std::vector<Elem>{0, 1, three});
  // 1 + 1 = 2 is missing.
  CHECK(!c.closed);
  CHECK(c.elements.size() == 6);

  RingPtr m2 = build_ring(RingSpec::matrix(RingSpec::gf(2), 2));
  std::vector<Elem> upper;
  for (Elem a = 0; a < m2->size(); ++a)
    if (m2->coords(a)[2] == 0) upper.push_back(a);
  auto u = subring_closure(*m2, upper);
  CHECK(u.closed);
  CHECK(u.elements.size() == 8);
  RingPtr T = make_subring(m2, upper);
  CHECK(T->size() == 8);
  CHECK(T->units().size() == 2);
  for (Elem a = 0; a < T->size(); ++a) CHECK(T->from_parent(T->to_parent(a)) == a);
}

TEST_CASE("right regular representation is multiplicative") {
  RingPtr R = build_ring(exterior_over(RingSpec::gf(2)));
  auto rep = regular_representation(R);
  CHECK(rep.codomain->size() == 65536);
  const FiniteRing& M = *rep.codomain;
  std::set<Elem> image(rep.values.begin(), rep.values.end());
  CHECK(image.size() == R->size());
  CHECK(rep.values[R->one()] == M.one());
  // x -> x a is a right action: (ab)^ρ = a^ρ b^ρ with row-vector coordinates.
  for (Elem a = 0; a < R->size(); ++a)
    for (Elem b = 0; b < R->size(); ++b) {
      CHECK(rep.values[R->mul(a, b)] == M.mul(rep.values[a], rep.values[b]));
      CHECK(rep.values[R->add(a, b)] == M.add(rep.values[a], rep.values[b]));
    }
}
