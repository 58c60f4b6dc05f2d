#pragma once

// Jordan homomorphisms: additive unital maps with (aba)^α = a^α b^α a^α.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringline/elemgrp.hpp"
#include "ringline/freealg.hpp"
#include "ringline/report.hpp"
#include "ringline/rings.hpp"

namespace ringline {

/// Constructor tree for a map between two rings.
struct MapSpec {
  enum class Kind { identity, table, product, herzer, compose, transpose, regular_rep };

  Kind kind = Kind::identity;
  /// table: (element name, image name) for every domain element.
  std::vector<std::pair<std::string, std::string>> table;
  /// product: one map per factor; compose: {inner, outer}.
  std::vector<MapSpec> parts;
  /// herzer: row i lists the base-ring coordinates of the image of e_{i+1};
  /// the base-ring part is mapped identically.
  std::vector<std::vector<std::string>> alpha2;
  /// compose: the ring between inner and outer (defaults to the domain).
  std::optional<RingSpec> middle;

  static MapSpec identity();
  static MapSpec from_table(std::vector<std::pair<std::string, std::string>> entries);
  static MapSpec product(std::vector<MapSpec> factors);
  static MapSpec herzer(std::vector<std::vector<std::string>> rows);
  static MapSpec compose(MapSpec inner, MapSpec outer, std::optional<RingSpec> middle = std::nullopt);
  static MapSpec transpose();
  static MapSpec regular_rep();

  std::string describe() const;
};

struct JordanMap {
  RingPtr domain, codomain;
  std::vector<Elem> values;
  std::string label;
  bool additive = false;
  bool unital = false;
  bool jordan = false;
  bool homomorphism = false;
  bool antihomomorphism = false;
  /// Pairs (a, b) with (ab)^α != a^α b^α, resp. (ab)^α != b^α a^α.
  std::optional<std::array<Elem, 2>> not_homo_witness, not_anti_witness;
  /// Closure of the image: the subring R'' and whether the image already was one.
  SubringClosure image_closure;
  RingPtr image_ring;

  bool proper() const { return !homomorphism && !antihomomorphism; }
  Elem operator()(Elem a) const { return values[a]; }
  RingMapView view() const { return {domain.get(), codomain.get(), values}; }
  bool surjective_onto_image_ring() const { return image_closure.closed; }
  /// Multi-line block: additive, unital, jordan, homo, antihomo, proper, image-closed.
  std::string classification() const;
};

struct JordanError : RingError {
  using RingError::RingError;
};

/// Materializes the map and classifies it exhaustively. Throws JordanError
/// (with a witness) when additivity, unitality or the Jordan law fails.
JordanMap build_map(const MapSpec& spec, const RingPtr& domain, const RingPtr& codomain);
JordanMap make_jordan_map(const RingPtr& domain, const RingPtr& codomain, std::vector<Elem> values,
                          std::string label);

ParamSeq apply_seq(const JordanMap& alpha, std::span<const Elem> T);

/// Every unit maps to a unit and (a^{-1})^α = (a^α)^{-1}.
CheckResult verify_unit_behavior(const JordanMap& alpha);

/// f(T)^α = f(T^α) for all |T| <= max_len, where f is the product of
/// `factors` (evaluated factor by factor).
CheckResult test_j_polynomial(const std::vector<const FreePoly*>& factors, const std::string& fname,
                              const JordanMap& alpha, std::size_t max_len, const SweepBudget& budget);

/// (a) e_1^n(T) in R* implies e_1^n(T^α) in R'*; (b) if moreover
/// e_1^{n-1}(T) = 0 then e_1^{n-1}(T^α) = 0'. Two records.
std::vector<CheckResult> test_thm_inv0(const JordanMap& alpha, std::size_t max_len, const SweepBudget& budget);

/// E(T) in H implies E(T^α) in H'' for all |T| <= max_len.
CheckResult check_centre_transfer(const JordanMap& alpha, std::size_t max_len);

/// apply_seq commutes with word_inverse for |T| <= max_len.
CheckResult check_apply_seq_hat(const JordanMap& alpha, std::size_t max_len, const SweepBudget& budget);

/// Whether E(T) = E(V) implies E(T^α) = E(V^α) over all words of length <= 3.
struct EMapConsistency {
  bool well_defined = true;
  std::optional<std::pair<ParamSeq, ParamSeq>> violation;
  std::uint64_t words = 0;
};

EMapConsistency check_E_map(const JordanMap& alpha);

}  // namespace ringline
