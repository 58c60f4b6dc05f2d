#include "ringline/presets.hpp"

#include <stdexcept>

namespace ringline {

RingSpec gf4() { return RingSpec::gf(2, 2, {1, 1}); }

RingSpec exterior_over(RingSpec base) { return RingSpec::exterior(std::move(base)); }

std::vector<RingPreset> ring_corpus() {
  return {
      {"zmod4", RingSpec::zmod(4)},
      {"zmod6", RingSpec::zmod(6)},
      {"gf4", gf4()},
      {"m2f2", RingSpec::matrix(RingSpec::gf(2), 2)},
      {"ext-gf2", exterior_over(RingSpec::gf(2))},
      {"ext-gf3", exterior_over(RingSpec::gf(3))},
  };
}

MapPreset herzer_swap(const std::string& label, RingSpec base) {
  RingSpec r = exterior_over(std::move(base));
  return {label, r, r, MapSpec::herzer({{"1", "0", "0"}, {"0", "0", "1"}, {"0", "1", "0"}})};
}

MapPreset herzer_kill_e3(const std::string& label, RingSpec base) {
  RingSpec r = exterior_over(std::move(base));
  return {label, r, r, MapSpec::herzer({{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "0"}})};
}

MapPreset regular_rep_of_swap() {
  MapPreset swap = herzer_swap("swap", RingSpec::gf(2));
  RingSpec m4 = RingSpec::matrix(RingSpec::gf(2), 4).with_cap(1u << 16);
  return {"swap-then-regular-rep-gf2", swap.domain, m4, MapSpec::compose(swap.map, MapSpec::regular_rep(), swap.domain)};
}

std::vector<std::pair<std::string, std::string>> frobenius_gf4_table() {
  return {{"(0,0)", "(0,0)"}, {"(1,0)", "(1,0)"}, {"(0,1)", "(1,1)"}, {"(1,1)", "(0,1)"}};
}

std::vector<MapPreset> map_corpus() {
  RingSpec m2 = RingSpec::matrix(RingSpec::gf(2), 2);
  RingSpec m2sq = RingSpec::product({m2, m2});
  return {
      {"identity-zmod6", RingSpec::zmod(6), RingSpec::zmod(6), MapSpec::identity()},
      {"reduction-zmod4-zmod2", RingSpec::zmod(4), RingSpec::zmod(2),
       MapSpec::from_table({{"0", "0"}, {"1", "1"}, {"2", "0"}, {"3", "1"}})},
      {"frobenius-gf4", gf4(), gf4(), MapSpec::from_table(frobenius_gf4_table())},
      {"transpose-m2f2", m2, m2, MapSpec::transpose()},
      {"identity-x-transpose-m2f2", m2sq, m2sq, MapSpec::product({MapSpec::identity(), MapSpec::transpose()})},
      herzer_swap("swap-ext-gf2", RingSpec::gf(2)),
      herzer_swap("swap-ext-gf3", RingSpec::gf(3)),
      herzer_kill_e3("kill-e3-ext-gf3", RingSpec::gf(3)),
  };
}

MapPreset map_preset(const std::string& label) {
  for (auto& p : map_corpus())
    if (p.label == label) return p;
  throw std::invalid_argument("no corpus map " + label);
}

std::vector<ChainMapPreset> chain_map_corpus() {
  RingSpec m2 = RingSpec::matrix(RingSpec::gf(2), 2);
  RingSpec g4sq = RingSpec::product({gf4(), gf4()});
  // Frobenius x -> x^2 of gf(4) in the second factor only.
  const auto frob = frobenius_gf4_table();
  return {
      {"swap-ext-gf3", herzer_swap("swap-ext-gf3", RingSpec::gf(3)), {"(1,0,0,0)"}, {"(1,0,0,0)"}, true},
      {"identity-m2f2-f4", {"identity-m2f2", m2, m2, MapSpec::identity()}, {"[0,1,1,1]"}, {"[0,1,1,1]"}, true},
      {"frobenius-gf4sq-diagonal",
       {"id-x-frobenius-gf4sq", g4sq, g4sq, MapSpec::product({MapSpec::identity(), MapSpec::from_table(frob)})},
       {"((0,1),(0,1))"},
       {"((0,1),(0,1))"},
       false},
      {"identity-gf4-gf2", {"identity-gf4", gf4(), gf4(), MapSpec::identity()}, {"(1,0)"}, {"(1,0)"}, true},
  };
}

JordanMap build_preset(const MapPreset& p) {
  RingPtr domain = build_ring(p.domain);
  RingPtr codomain = p.codomain.describe() == p.domain.describe() && p.codomain.cap == p.domain.cap
                         ? domain
                         : build_ring(p.codomain);
  JordanMap m = build_map(p.map, domain, codomain);
  m.label = p.label;
  return m;
}

}  // namespace ringline
