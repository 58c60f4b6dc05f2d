#pragma once

// Chain geometries: subfields K of a finite ring R, the K-chains (images of
// the subline P(K) under GL_2(R)), and the chain criterion for induced maps.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringline/elemgrp.hpp"
#include "ringline/jordan.hpp"
#include "ringline/projline.hpp"
#include "ringline/report.hpp"
#include "ringline/rings.hpp"

namespace ringline {

struct SubfieldK {
  std::vector<Elem> elements;  // sorted, as elements of the ambient ring
  RingPtr ring;                // the subring object
  bool central = false;        // K inside Z(R)
  bool inner_invariant = false;  // u^{-1} K u = K for all units u
};

/// Whether the sorted subset is a subfield: closed under +, -, *, contains
/// 0 and 1, commutative, every nonzero element invertible inside it.
bool is_subfield(const FiniteRing& R, std::span<const Elem> elements);

/// The subfield generated by `generators`. Throws RingError if the
/// generated subring is not a field.
SubfieldK make_subfield(const RingPtr& R, std::span<const Elem> generators);

/// All subfields with at most max_size elements, ordered by size then
/// elements. Every finite field is generated by one element, so closures of
/// single elements find them all.
std::vector<SubfieldK> find_subfields(const RingPtr& R, std::size_t max_size);

struct Chain {
  std::vector<std::size_t> points;  // sorted
  Mat2 witness;                     // chain = P(K) witness
};

struct ChainSet {
  std::vector<Chain> chains;
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<std::size_t> base_chain;  // P(K) itself, sorted

  std::optional<std::size_t> find(const std::vector<std::size_t>& sorted_points) const;
};

/// Orbit of P(K) under the group generated by all E(t) and diag(u, 1).
/// Throws RingError when more than `cap` chains appear.
ChainSet enumerate_chains(const ProjectiveLine& line, const SubfieldK& K, std::size_t cap = 2'000'000);

/// Sorted points of D_c = {R(k c, 1) : k in K} ∪ {R(1,0)}.
std::vector<std::size_t> chain_D(const ProjectiveLine& line, const SubfieldK& K, Elem c);

/// Chain properties: size |K|+1 inside one component; D_c enumerated for
/// every unit c; distinct points distant iff on a common chain; mutually
/// distant triples on some chain; GL_2 stability (every invertible matrix
/// for |R| <= 16, else seeded samples).
std::vector<CheckResult> check_chain_properties(const ProjectiveLine& line, const DistantGraph& graph,
                                                const ChainSet& chains, const SubfieldK& K, const std::string& label,
                                                std::uint64_t seed = 0);

/// For each unit c, some unit u' of R' with (K c)^α inside u'^{-1} K' u' c^α.
struct UnitCondition {
  bool holds = true;
  std::vector<std::pair<Elem, Elem>> witnesses;  // (c, u'_c) when holds
  std::optional<Elem> failing_c;
  CheckResult record;
};

UnitCondition check_unit_condition(const JordanMap& alpha, const SubfieldK& K, const SubfieldK& Kp);

struct ChainMapResult {
  bool preserves_chains = true;
  std::optional<std::size_t> failing_chain;
  UnitCondition condition;
  std::vector<CheckResult> records;
};

/// Tests directly whether every K-chain in C has image inside some K'-chain,
/// compares with the unit condition, and checks
/// diag(b, b^{-1}) = E(-b) E(-b^{-1}) E(-b) for all units b.
ChainMapResult check_chain_map(const InducedMap& m, const ChainSet& chains, const ChainSet& target_chains,
                        const SubfieldK& K, const SubfieldK& Kp);

}  // namespace ringline
