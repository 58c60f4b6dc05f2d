#pragma once

// Named corpus rings, maps and chain-geometry instances used by the suites.

#include <string>
#include <vector>

#include "ringline/jordan.hpp"
#include "ringline/rings.hpp"

namespace ringline {

struct RingPreset {
  std::string label;
  RingSpec spec;
};

struct MapPreset {
  std::string label;
  RingSpec domain, codomain;
  MapSpec map;
};

struct ChainMapPreset {
  std::string label;
  MapPreset map;
  std::vector<std::string> k_generators;   // in the domain
  std::vector<std::string> kp_generators;  // in the codomain
  bool expect_preserves = true;
};

RingSpec gf4();
/// bm(D, 3) with e_1 e_2 = e_3 = -e_2 e_1.
RingSpec exterior_over(RingSpec base);

/// zmod(4), zmod(6), gf(4), M_2(F_2), bm(gf(2)), bm(gf(3)).
std::vector<RingPreset> ring_corpus();
/// x -> x^2 on gf(4) as a table of element names.
std::vector<std::pair<std::string, std::string>> frobenius_gf4_table();
/// identity on zmod(6), zmod(4) -> zmod(2), Frobenius of gf(4), transpose on M_2(F_2), identity x
/// transpose on M_2(F_2)^2, herzer swap over gf(2) and gf(3), herzer e_3 -> 0.
std::vector<MapPreset> map_corpus();
/// The corpus map with the given label; throws std::invalid_argument.
MapPreset map_preset(const std::string& label);

/// Example maps over bm(D, 3): e_2 <-> e_3 swap, and e_3 -> 0.
MapPreset herzer_swap(const std::string& label, RingSpec base);
MapPreset herzer_kill_e3(const std::string& label, RingSpec base);
/// The swap composed with the right regular representation into M_4(gf(2)).
MapPreset regular_rep_of_swap();

/// herzer swap over gf(3) with K = K' = prime field; identity on M_2(F_2)
/// with an embedded F_4; (x, y) -> (x, y^2) on gf(4)^2 with the diagonal
/// F_4; identity on gf(4) with K = gf(2).
std::vector<ChainMapPreset> chain_map_corpus();

JordanMap build_preset(const MapPreset& p);

}  // namespace ringline
