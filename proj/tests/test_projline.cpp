#include <algorithm>
#include <set>

#include "doctest.h"
#include "ringline/presets.hpp"
#include "ringline/projline.hpp"

using namespace ringline;

namespace {

bool brute_invertible(const FiniteRing& R, const Mat2& m) {
  for (Elem a = 0; a < R.size(); ++a)
    for (Elem b = 0; b < R.size(); ++b) {
      // (a, b) m = (1, 0): then complete the second row by search.
      if (R.add(R.mul(a, m.a), R.mul(b, m.c)) != R.one() || R.add(R.mul(a, m.b), R.mul(b, m.d)) != 0) continue;
      for (Elem c = 0; c < R.size(); ++c)
        for (Elem d = 0; d < R.size(); ++d)
          if (R.add(R.mul(c, m.a), R.mul(d, m.c)) == 0 && R.add(R.mul(c, m.b), R.mul(d, m.d)) == R.one())
            return true;
    }
  return false;
}

// Admissible pairs are first rows of invertible matrices; units act freely
// on them, so the point count is their number divided by |R*|.
std::size_t brute_point_count(const FiniteRing& R) {
  std::size_t pairs = 0;
  for (Elem a = 0; a < R.size(); ++a)
    for (Elem b = 0; b < R.size(); ++b) {
      bool found = false;
      for (Elem c = 0; c < R.size() && !found; ++c)
        for (Elem d = 0; d < R.size() && !found; ++d) found = try_invert(R, Mat2{a, b, c, d}).has_value();
      pairs += found;
    }
  return pairs / R.units().size();
}

struct LineFixture {
  RingPtr ring;
  ProjectiveLine line;
  DistantGraph graph;
  ComponentOrbit orbit;

  explicit LineFixture(const RingSpec& spec)
      : ring(build_ring(spec)), line(ring), graph(build_graph(line)), orbit(component_of_base(line)) {}
};

}  // namespace

TEST_CASE("point counts") {
  struct Expect {
    RingSpec spec;
    std::size_t points;
  };
  // Local rings: |R| + |m|; Z/6: 3 * 4; M_2(F_2): the 35 planes of F_2^4.
  const Expect expect[] = {
      {RingSpec::gf(2), 3},           {RingSpec::zmod(4), 6}, {RingSpec::zmod(6), 12}, {gf4(), 5},
      {RingSpec::matrix(RingSpec::gf(2), 2), 35}, {exterior_over(RingSpec::gf(2)), 24},
      {exterior_over(RingSpec::gf(3)), 108},
  };
  for (const auto& [spec, n] : expect) {
    RingPtr R = build_ring(spec);
    CAPTURE(R->description());
    ProjectiveLine line(R);
    CHECK(line.size() == n);
    if (R->size() <= 16) CHECK(brute_point_count(*R) == n);
    for (std::size_t p = 0; p < line.size(); ++p) {
      CHECK(line.find(line.rep(p)) == p);
      CHECK(Row{line.completion(p).a, line.completion(p).b} == line.rep(p));
      CHECK(mul(*R, line.completion(p), line.completion_inverse(p)) == identity(*R));
    }
  }
}

TEST_CASE("admissibility over Z/6") {
  LineFixture f(RingSpec::zmod(6));
  CHECK(!f.line.admissible(Row{2, 2}));
  CHECK(!f.line.unimodular(Row{2, 2}));
  CHECK(f.line.admissible(Row{2, 3}));
  CHECK(f.line.unimodular(Row{2, 3}));
  CHECK(f.line.find(Row{2, 3}) == f.line.find(Row{4, 3}));
  CHECK_THROWS_AS(f.line.index_of(Row{0, 0}), std::invalid_argument);
  CHECK(f.line.name(f.line.base()) == "R(1,0)");
}

TEST_CASE("unimodular equals admissible for small rings") {
  for (auto spec : {RingSpec::zmod(4), RingSpec::zmod(6), RingSpec::matrix(RingSpec::gf(2), 2)}) {
    RingPtr R = build_ring(spec);
    ProjectiveLine line(R);
    for (Elem a = 0; a < R->size(); ++a)
      for (Elem b = 0; b < R->size(); ++b) CHECK(line.unimodular(Row{a, b}) == line.admissible(Row{a, b}));
  }
}

TEST_CASE("distant relation matches invertibility of stacked rows") {
  for (auto spec : {RingSpec::zmod(4), RingSpec::zmod(6), gf4()}) {
    LineFixture f(spec);
    const FiniteRing& R = *f.ring;
    for (std::size_t p = 0; p < f.line.size(); ++p)
      for (std::size_t q = 0; q < f.line.size(); ++q) {
        const Mat2 m{f.line.rep(p)[0], f.line.rep(p)[1], f.line.rep(q)[0], f.line.rep(q)[1]};
        CHECK(f.line.distant(p, q) == brute_invertible(R, m));
        CHECK((f.graph.distance(p, q) == 1) == f.line.distant(p, q));
      }
  }
}

TEST_CASE("distant graph of Z/4") {
  LineFixture f(RingSpec::zmod(4));
  CHECK(f.graph.components == 1);
  CHECK(f.graph.diameter == std::vector<std::uint32_t>{2});
  const std::size_t p = f.line.index_of(Row{1, 0}), q = f.line.index_of(Row{1, 2});
  CHECK(!f.line.distant(p, q));
  CHECK(f.graph.distance(p, q) == 2);
  CHECK(f.graph.distance(p, p) == 0);
  // Neighbours of R(1,0) are the points R(t,1).
  CHECK(f.graph.adjacency[f.line.base()].size() == 4);
}

TEST_CASE("gf(4) line is a complete graph") {
  LineFixture f(gf4());
  CHECK(f.graph.diameter == std::vector<std::uint32_t>{1});
  CHECK(check_orbit_component(f.line, f.graph, f.orbit).pass);
}

TEST_CASE("orbit of R(1,0) is the whole line with correct witnesses") {
  for (const auto& preset : ring_corpus()) {
    LineFixture f(preset.spec);
    CAPTURE(preset.label);
    CHECK(f.orbit.points.size() == f.line.size());
    CHECK(check_orbit_component(f.line, f.graph, f.orbit).pass);
    for (std::size_t p : f.orbit.points) {
      const ParamSeq w = f.orbit.witness(p);
      CHECK(f.line.apply(f.line.base(), E_word(*f.ring, w)) == p);
      CHECK(w.size() == f.orbit.depth[p]);
    }
  }
}

TEST_CASE("orbit under the prime subfield of gf(4)") {
  LineFixture f(gf4());
  std::vector<Elem> prime{0, 1};
  ComponentOrbit o = orbit_under(f.line, prime);
  CHECK(o.points.size() == 3);
}

TEST_CASE("two-transitive normalizer over gf(3)") {
  LineFixture f(RingSpec::gf(3));
  std::size_t pairs = 0;
  for (std::size_t p = 0; p < f.line.size(); ++p)
    for (std::size_t q = 0; q < f.line.size(); ++q) {
      if (!f.line.distant(p, q)) {
        CHECK_THROWS_AS(two_transitive_normalizer(f.line, f.orbit, p, q), std::invalid_argument);
        continue;
      }
      ++pairs;
      const Mat2 m = E_word(*f.ring, two_transitive_normalizer(f.line, f.orbit, p, q));
      CHECK(f.line.apply(p, m) == f.line.base());
      CHECK(f.line.apply(q, m) == f.line.point_01());
    }
  CHECK(pairs == 12);
}

TEST_CASE("harmonic quadruples against a search over GL_2") {
  for (auto spec : {RingSpec::zmod(4), RingSpec::gf(3), RingSpec::gf(5)}) {
    LineFixture f(spec);
    const FiniteRing& R = *f.ring;
    CAPTURE(R.description());
    // Images of the normalized quadruples (R(1,0), R(0,1), R(u,1), R(-u,1))
    // under every invertible matrix.
    std::set<std::array<std::size_t, 4>> harmonic_set;
    const auto n = static_cast<Elem>(R.size());
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          for (Elem d = 0; d < n; ++d) {
            const Mat2 m{a, b, c, d};
            if (!try_invert(R, m)) continue;
            for (Elem u : R.units()) {
              std::array<Row, 4> rows{Row{1, 0}, Row{0, 1}, Row{u, 1}, Row{R.neg(u), 1}};
              std::array<std::size_t, 4> q{};
              for (int i = 0; i < 4; ++i) q[i] = f.line.index_of(act(R, rows[i], m));
              harmonic_set.insert(q);
            }
          }
    std::size_t checked = 0;
    for (std::size_t p0 = 0; p0 < f.line.size(); ++p0)
      for (std::size_t p1 = 0; p1 < f.line.size(); ++p1)
        for (std::size_t p2 = 0; p2 < f.line.size(); ++p2)
          for (std::size_t p3 = 0; p3 < f.line.size(); ++p3) {
            if (!harmonic_precondition(f.line, p0, p1, p2, p3)) {
              if (!f.line.distant(p0, p1)) CHECK_THROWS_AS(harmonic(f.line, p0, p1, p2, p3), std::invalid_argument);
              continue;
            }
            ++checked;
            CHECK(harmonic(f.line, p0, p1, p2, p3) == (harmonic_set.count({p0, p1, p2, p3}) != 0));
          }
    CHECK(checked > 0);
  }
}

TEST_CASE("harmonic example over Z/4") {
  LineFixture f(RingSpec::zmod(4));
  const auto& L = f.line;
  CHECK(harmonic(L, L.index_of({1, 0}), L.index_of({0, 1}), L.index_of({1, 1}), L.index_of({3, 1})));
  CHECK(!harmonic(L, L.index_of({1, 0}), L.index_of({0, 1}), L.index_of({1, 1}), L.index_of({1, 1})));
}

TEST_CASE("induced map of the reduction Z/4 -> Z/2 is entrywise") {
  JordanMap alpha = build_preset(map_preset("reduction-zmod4-zmod2"));
  ProjectiveLine line(alpha.domain), target(alpha.codomain);
  ComponentOrbit orbit = component_of_base(line);
  DistantGraph g = build_graph(line), tg = build_graph(target);
  InducedMap m = induced_map(alpha, line, target, orbit, g.diameter[0]);
  for (const auto& r : m.certificate) {
    INFO(r.name << " " << r.witness);
    CHECK(r.pass);
  }
  for (std::size_t p = 0; p < line.size(); ++p) {
    const Row v = line.rep(p);
    CHECK(m.table[p] == static_cast<std::int64_t>(target.index_of(Row{alpha(v[0]), alpha(v[1])})));
  }
  CHECK(!m.injective);
  CHECK(check_equivariance(m).pass);
  for (const auto& r : check_map_preservation(m, g, tg, {})) CHECK(r.pass);
  // A single component: no choices needed, and pasting reproduces ᾱ.
  CHECK(extend_map(m, g, {}) == m.table);
  // Choices for the base component are ignored.
  CHECK(extend_map(m, g, {{0, ComponentChoice{Mat2{}, Mat2{}}}}) == m.table);
}

TEST_CASE("extend_map validates choice matrices") {
  // Lines over finite rings are connected, so relabel the distant graph of
  // Z/4 into two components to reach the pasting path.
  JordanMap alpha = build_preset(map_preset("reduction-zmod4-zmod2"));
  ProjectiveLine line(alpha.domain), target(alpha.codomain);
  ComponentOrbit orbit = component_of_base(line);
  DistantGraph g = build_graph(line);
  InducedMap m = induced_map(alpha, line, target, orbit, g.diameter[0]);
  const FiniteRing& R = *alpha.domain;
  const std::size_t far = line.index_of({1, 2});
  DistantGraph split = g;
  split.components = 2;
  split.component[far] = 1;
  const Mat2 a{1, 2, 0, 1};  // first row (1, 2)
  const Mat2 ap = identity(*alpha.codomain);
  CHECK_THROWS_AS(extend_map(m, split, {}), std::invalid_argument);
  CHECK_THROWS_AS(extend_map(m, split, {{1, ComponentChoice{Mat2{2, 0, 0, 2}, ap}}}), std::invalid_argument);
  CHECK_THROWS_AS(extend_map(m, split, {{1, ComponentChoice{identity(R), ap}}}), std::invalid_argument);
  CHECK_THROWS_AS(extend_map(m, split, {{1, ComponentChoice{a, Mat2{}}}}), std::invalid_argument);
  // R(1,2) A^{-1} = R(1,0), whose image R'(1,0) is moved by A' = I.
  auto ext = extend_map(m, split, {{1, ComponentChoice{a, ap}}});
  CHECK(ext[far] == static_cast<std::int64_t>(target.base()));
}

TEST_CASE("affine formulas for every corpus map") {
  for (const auto& preset : map_corpus()) {
    CAPTURE(preset.label);
    JordanMap alpha = build_preset(preset);
    ProjectiveLine line(alpha.domain), target(alpha.codomain);
    ComponentOrbit orbit = component_of_base(line);
    DistantGraph g = build_graph(line);
    InducedMap m = induced_map(alpha, line, target, orbit, g.diameter[0], 2);
    const FiniteRing& R = *alpha.domain;
    const FiniteRing& S = *alpha.codomain;
    for (Elem t = 0; t < R.size(); ++t) {
      CHECK(m.table[line.index_of({R.one(), t})] == static_cast<std::int64_t>(target.index_of({S.one(), alpha(t)})));
      CHECK(m.table[line.index_of({t, R.one()})] == static_cast<std::int64_t>(target.index_of({alpha(t), S.one()})));
    }
    for (const auto& r : m.certificate) {
      INFO(r.name << " " << r.witness);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("transpose: sigma extension and its stabilizer formula") {
  JordanMap alpha = build_preset(map_preset("transpose-m2f2"));
  REQUIRE(alpha.antihomomorphism);
  ProjectiveLine line(alpha.domain);
  ComponentOrbit orbit = component_of_base(line);
  DistantGraph g = build_graph(line);
  InducedMap m = induced_map(alpha, line, line, orbit, g.diameter[0], 2);
  auto ext = sigma_extension(m);
  REQUIRE(ext);
  CHECK(ext->table == m.table);
  for (const auto& r : ext->checks) {
    INFO(r.name << " " << r.witness);
    CHECK(r.pass);
  }
  const FiniteRing& R = *alpha.domain;
  for (Elem t = 0; t < R.size(); ++t) CHECK(*sigma(alpha, E(R, t)) == E(R, alpha(t)));
  // The stabilizer of R(1,0) is the lower triangular group; σ keeps it there.
  for (Elem a : R.units())
    for (Elem d : R.units())
      for (Elem c = 0; c < R.size(); ++c) {
        const Mat2 s = *sigma(alpha, Mat2{a, 0, c, d});
        CHECK(s.b == 0);
        CHECK(s.a == R.inverse(alpha(d)));
        CHECK(s.d == R.inverse(alpha(a)));
      }
}

TEST_CASE("sigma is undefined for proper maps") {
  JordanMap alpha = build_preset(map_preset("identity-x-transpose-m2f2"));
  CHECK(!sigma(alpha, identity(*alpha.domain)));
}

TEST_CASE("pasting per-component maps") {
  // Points 0..5 in components {0, 0, 1, 1, 2, 2}; component k is a shifted
  // copy of component 0 and the base map doubles indices.
  const std::vector<std::uint32_t> component{0, 0, 1, 1, 2, 2};
  auto out = paste_components(
      component, 0, [](std::size_t p) { return static_cast<std::int64_t>(10 * p); },
      [](std::size_t p) { return p % 2; },
      [](std::uint32_t mu, std::int64_t img) { return img + 100 * static_cast<std::int64_t>(mu); });
  CHECK(out == std::vector<std::int64_t>{0, 10, 100, 110, 200, 210});
  CHECK_THROWS_AS(paste_components(
                      component, 0, [](std::size_t) { return std::int64_t{0}; }, [](std::size_t p) { return p; },
                      [](std::uint32_t, std::int64_t v) { return v; }),
                  std::invalid_argument);
}

TEST_CASE("P(gf(2)) embeds into P(gf(4))") {
  RingPtr g4 = build_ring(gf4());
  RingPtr sub = make_subring(g4, {0, 1});
  ProjectiveLine small(sub), big(g4);
  auto emb = embed_subring_line(small, big);
  CHECK(emb.size() == 3);
  CHECK(std::set<std::size_t>(emb.begin(), emb.end()).size() == 3);
}
