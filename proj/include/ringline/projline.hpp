#pragma once

// The projective line P(R) over a finite ring: points R(a,b) for first rows
// (a,b) of invertible matrices, the distant relation, the component C of
// R(1,0), and the map induced on C by a Jordan homomorphism.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringline/elemgrp.hpp"
#include "ringline/jordan.hpp"
#include "ringline/report.hpp"
#include "ringline/rings.hpp"

namespace ringline {

inline constexpr std::size_t kLineRingLimit = 1024;

class ProjectiveLine {
 public:
  /// Enumerates all points. Needs the unit group (size <= kStructureLimit).
  explicit ProjectiveLine(RingPtr ring);

  const FiniteRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  std::size_t size() const { return reps_.size(); }

  /// Canonical pair: least (u a, u b) over units u in index order.
  const Row& rep(std::size_t p) const { return reps_[p]; }
  /// An invertible matrix with first row rep(p).
  const Mat2& completion(std::size_t p) const { return completions_[p]; }
  const Mat2& completion_inverse(std::size_t p) const { return completion_inverses_[p]; }

  /// Point of an admissible pair, or nullopt.
  std::optional<std::size_t> find(Row v) const;
  /// Throws std::invalid_argument for non-admissible pairs.
  std::size_t index_of(Row v) const;
  bool admissible(Row v) const { return find(v).has_value(); }
  /// Exists (x, y) with a x + b y = 1.
  bool unimodular(Row v) const;

  bool distant(std::size_t p, std::size_t q) const;
  std::size_t apply(std::size_t p, const Mat2& m) const;
  std::size_t apply_E(std::size_t p, Elem t) const;

  std::size_t base() const { return base_; }  // R(1,0)
  std::size_t point_01() const;               // R(0,1)
  std::size_t point_11() const;               // R(1,1)
  std::string name(std::size_t p) const;

 private:
  RingPtr ring_;
  std::vector<Row> reps_;
  std::vector<Mat2> completions_, completion_inverses_;
  std::vector<std::int32_t> lookup_;  // pair (a,b) -> point, -1 if not admissible
  std::vector<std::vector<char>> right_ideal_;  // right_ideal_[b][y]: y in bR
  std::size_t base_ = 0;
};

/// Injective map P(R'') -> P(R') for a subring R'' of R' (given as a
/// subring ring object whose parent is line.ring()).
std::vector<std::size_t> embed_subring_line(const ProjectiveLine& sub_line, const ProjectiveLine& line);

struct DistantGraph {
  static constexpr std::uint8_t kUnreachable = 255;
  std::vector<std::vector<std::uint32_t>> adjacency;
  std::vector<std::uint32_t> component;  // label per point, labels in order of first point
  std::size_t components = 0;
  std::vector<std::uint8_t> dist;  // n * n
  std::vector<std::uint32_t> diameter;  // per component
  std::size_t n = 0;

  std::uint8_t distance(std::size_t p, std::size_t q) const { return dist[p * n + q]; }
};

DistantGraph build_graph(const ProjectiveLine& line);

/// Orbit of R(1,0) under E_2(R), by breadth-first search over p -> p E(t),
/// with the first shortest word reaching each point.
struct ComponentOrbit {
  std::vector<char> member;
  std::vector<std::int64_t> parent;  // -1 for the base point or non-members
  std::vector<Elem> letter;
  std::vector<std::uint32_t> depth;
  std::vector<std::size_t> points;  // in BFS order

  bool contains(std::size_t p) const { return member[p] != 0; }
  ParamSeq witness(std::size_t p) const;
  std::uint32_t max_depth() const;
};

ComponentOrbit component_of_base(const ProjectiveLine& line);
/// Orbit of R(1,0) in `line` under E(t) for t in `generators` only.
ComponentOrbit orbit_under(const ProjectiveLine& line, std::span<const Elem> generators);

/// The orbit equals the graph component of R(1,0) and witness lengths equal
/// graph distances.
CheckResult check_orbit_component(const ProjectiveLine& line, const DistantGraph& graph, const ComponentOrbit& orbit);

/// W with p E(W) = R(1,0) and q E(W) = R(0,1). Throws std::invalid_argument
/// unless p, q are distant points of C.
ParamSeq two_transitive_normalizer(const ProjectiveLine& line, const ComponentOrbit& orbit, std::size_t p,
                                   std::size_t q);

/// Precondition of harmonic(): p0, p1 distant and both distant to p2 and p3.
bool harmonic_precondition(const ProjectiveLine& line, std::size_t p0, std::size_t p1, std::size_t p2,
                           std::size_t p3);
/// Whether some invertible M maps the quadruple to (R(1,0), R(0,1), R(u,1),
/// R(-u,1)), u a unit. Throws std::invalid_argument if the precondition fails.
bool harmonic(const ProjectiveLine& line, std::size_t p0, std::size_t p1, std::size_t p2, std::size_t p3);

/// The map C -> C'' induced by a Jordan homomorphism, computed from the
/// witness word of every point, with its certificate records.
struct InducedMap {
  const JordanMap* alpha = nullptr;
  const ProjectiveLine* line = nullptr;    // P(R)
  const ProjectiveLine* target = nullptr;  // P(R')
  const ComponentOrbit* orbit = nullptr;
  std::vector<std::int64_t> table;  // -1 outside C
  ComponentOrbit target_orbit;      // C'': orbit of R'(1,0) under E(r''), r'' in R''
  bool injective = false;
  std::vector<CheckResult> certificate;
};

/// Certificate: every word |T| <= cert_len agrees with the table on the
/// first row (well defined) and the second row; stabilizer transfer; affine
/// formulas; fundamental triple; single formula with m = max(2, diameter);
/// image inside C'' (equal to C'' when the image is a subring).
InducedMap induced_map(const JordanMap& alpha, const ProjectiveLine& line, const ProjectiveLine& target,
                       const ComponentOrbit& orbit, std::uint32_t diameter, std::size_t cert_len = 3);

/// (p E(t))^ᾱ = p^ᾱ E(t^α) for all p in C and t in R.
CheckResult check_equivariance(const InducedMap& m);

/// Distant pairs preserved, distances contracted, harmonic quadruples
/// preserved. Quadruples run exhaustively when |C|^4 <= budget.budget and are
/// otherwise drawn as budget.samples seeded normalized quadruples moved by
/// random invertible matrices.
std::vector<CheckResult> check_map_preservation(const InducedMap& m, const DistantGraph& graph, const DistantGraph& target_graph,
                                      const SweepBudget& budget);

/// Gluing per-component maps on an abstract point set: points in the base
/// component go through base_map, others through to_base then base_map then
/// from_base(component, image).
std::vector<std::int64_t> paste_components(std::span<const std::uint32_t> component, std::uint32_t base_component,
                                           const std::function<std::int64_t(std::size_t)>& base_map,
                                           const std::function<std::size_t(std::size_t)>& to_base,
                                           const std::function<std::int64_t(std::uint32_t, std::int64_t)>& from_base);

/// Choice matrices A_mu (first row in component mu) and A'_mu for every
/// component other than that of R(1,0).
struct ComponentChoice {
  Mat2 a;
  Mat2 a_prime;
};

/// Extension of ᾱ to all of P(R) by pasting. Throws std::invalid_argument for
/// invalid choice matrices.
std::vector<std::int64_t> extend_map(const InducedMap& m, const DistantGraph& graph,
                                     const std::map<std::uint32_t, ComponentChoice>& choices);

/// M -> M^σ for homomorphisms (entrywise) and antihomomorphisms
/// (E(0')^{-1} ((M^T)^α)^{-1} E(0')); nullopt for proper maps.
std::optional<Mat2> sigma(const JordanMap& alpha, const Mat2& m);

/// The σ-extension R(1,0) M -> R'(1',0') M^σ and its checks: agreement with
/// ᾱ on C, with R(a,b) -> R'(a^α,b^α) for homomorphisms, E(t)^σ = E(t^α),
/// σ multiplicative on sampled pairs, and (antihomomorphisms) the image
/// formula for the stabilizer of R(1,0).
struct SigmaExtension {
  std::vector<std::int64_t> table;
  std::vector<CheckResult> checks;
};

std::optional<SigmaExtension> sigma_extension(const InducedMap& m, std::uint64_t seed = 0);

}  // namespace ringline
