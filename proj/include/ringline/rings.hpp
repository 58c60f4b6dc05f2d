#pragma once

// Finite associative unital rings with enumerable elements.
//
// Elements are indices 0..size()-1 in a fixed construction order; index 0 is
// always zero. Rings up to kTableLimit elements carry full operation tables,
// larger ones compute in closed form. Units and centre are enumerated for
// rings up to kStructureLimit elements.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ringline/freealg.hpp"

namespace ringline {

using Elem = std::uint32_t;
using ParamSeq = std::vector<Elem>;

inline constexpr std::size_t kDefaultSizeCap = 4096;
inline constexpr std::size_t kTableLimit = 256;
inline constexpr std::size_t kStructureLimit = 4096;

/// Constructor tree for a ring.
struct RingSpec {
  enum class Kind { zmod, gf, matrix, product, bm };

  /// Structure constant: e_i e_j contributes coeff * e_k (indices 1-based).
  struct Product {
    std::uint32_t i, j, k;
    Coeff coeff;
  };

  Kind kind = Kind::zmod;
  std::uint32_t modulus_n = 2;              // zmod(n); prime p for gf
  std::uint32_t degree = 1;                 // gf(p, k)
  std::vector<std::uint32_t> modulus;       // gf(p, k): c_0..c_{k-1} of monic x^k + ...
  std::vector<RingSpec> children;           // matrix/bm: {base}; product: factors
  std::uint32_t matrix_size = 2;
  std::uint32_t module_dim = 0;             // bm
  std::vector<Product> table;               // bm
  std::size_t cap = kDefaultSizeCap;

  static RingSpec zmod(std::uint32_t n);
  static RingSpec gf(std::uint32_t p);
  static RingSpec gf(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus);
  static RingSpec matrix(RingSpec base, std::uint32_t size);
  static RingSpec product(std::vector<RingSpec> factors);
  static RingSpec bm(RingSpec base, std::uint32_t mdim, std::vector<Product> table);
  /// bm over `base` with e_1 e_2 = e_3 = -e_2 e_1 and all other basis products 0.
  static RingSpec exterior(RingSpec base);

  RingSpec with_cap(std::size_t c) const {
    RingSpec s = *this;
    s.cap = c;
    return s;
  }

  std::string describe() const;
};

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

/// Thrown for invalid ring specs or operations outside a ring's structure.
struct RingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RingImpl;

class FiniteRing {
 public:
  enum class Kind { zmod, gf_prime, gf_ext, matrix, product, bm, subring };

  ~FiniteRing();
  FiniteRing(const FiniteRing&) = delete;
  FiniteRing& operator=(const FiniteRing&) = delete;

  std::size_t size() const { return size_; }
  Kind kind() const { return kind_; }
  const std::string& description() const { return description_; }

  Elem zero() const { return 0; }
  Elem one() const { return one_; }

  Elem add(Elem a, Elem b) const {
    return add_table_.empty() ? add_slow(a, b) : add_table_[static_cast<std::size_t>(a) * size_ + b];
  }
  Elem mul(Elem a, Elem b) const {
    return mul_table_.empty() ? mul_slow(a, b) : mul_table_[static_cast<std::size_t>(a) * size_ + b];
  }
  Elem neg(Elem a) const { return neg_table_.empty() ? neg_slow(a) : neg_table_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  /// The image of an integer under Z -> R.
  Elem from_integer(Coeff c) const;

  std::uint32_t characteristic() const { return characteristic_; }
  bool is_commutative() const { return commutative_; }

  /// True when units and centre were enumerated (size <= kStructureLimit).
  bool has_structure() const { return !inverse_.empty(); }
  bool is_unit(Elem a) const;
  std::optional<Elem> try_inverse(Elem a) const;
  /// Throws RingError for non-units.
  Elem inverse(Elem a) const;
  /// Sorted unit list; throws RingError without structure.
  std::span<const Elem> units() const;
  /// Sorted centre; throws RingError without structure.
  std::span<const Elem> centre() const;
  bool is_central(Elem a) const;
  /// Elements generating (R, +).
  std::span<const Elem> additive_generators() const { return additive_generators_; }

  /// Canonical element name: integers for Z/n, "(..)" tuples for extension
  /// fields, bm and product rings, "[..]" row-major lists for matrix rings.
  std::string name(Elem a) const;
  /// Inverse of name(); also accepts negative integers for Z/n. Throws
  /// RingError on malformed input.
  Elem parse(std::string_view text) const;
  /// Parses one element name starting at `pos`, advancing it.
  Elem parse_prefix(std::string_view text, std::size_t& pos) const;
  /// The spec this ring was built from (nullptr for subrings).
  const RingSpec* spec() const { return spec_ ? &*spec_ : nullptr; }

  /// Coordinate rings: base for matrix/bm/gf_ext, factors for product,
  /// parent for subring; empty for Z/n.
  std::span<const RingPtr> components() const { return components_; }
  /// Coordinates in the component rings (row-major entries, factor
  /// components, (b, m_1..m_d), polynomial coefficients, or {parent element}).
  std::vector<Elem> coords(Elem a) const;
  Elem from_coords(std::span<const Elem> c) const;
  std::uint32_t matrix_size() const { return matrix_size_; }
  std::uint32_t module_dim() const { return module_dim_; }

  /// For subrings: the element of the parent ring.
  Elem to_parent(Elem a) const;
  /// For subrings: the element with the given parent image, if present.
  std::optional<Elem> from_parent(Elem parent_elem) const;

  /// Exhaustive (size <= kTableLimit) or sampled ring-axiom check.
  CheckResult check_axioms(std::uint64_t seed = 0) const;

 private:
  friend RingPtr build_ring(const RingSpec&);
  friend RingPtr make_subring(const RingPtr&, std::vector<Elem>);
  FiniteRing();
  void finish();

  Elem add_slow(Elem a, Elem b) const;
  Elem mul_slow(Elem a, Elem b) const;
  Elem neg_slow(Elem a) const;

  std::unique_ptr<RingImpl> impl_;
  std::optional<RingSpec> spec_;
  Kind kind_ = Kind::zmod;
  std::size_t size_ = 0;
  std::string description_;
  Elem one_ = 0;
  std::uint32_t characteristic_ = 0;
  bool commutative_ = false;
  std::uint32_t matrix_size_ = 0;
  std::uint32_t module_dim_ = 0;
  std::vector<RingPtr> components_;
  std::vector<Elem> add_table_, mul_table_, neg_table_;
  std::vector<Elem> integer_multiples_;  // k * 1 for 0 <= k < characteristic
  std::vector<Elem> additive_generators_;
  std::vector<std::int64_t> inverse_;     // -1 for non-units
  std::vector<Elem> units_, centre_;
  std::vector<char> central_;
};

/// Builds and validates a ring. Throws RingError for invalid specs
/// (non-prime field order, reducible modulus, non-alternating or
/// non-associative bm table, non-commutative bm base, size cap exceeded).
RingPtr build_ring(const RingSpec& spec);

/// A ring whose elements are `elements` (a subring of `parent`, which must be
/// closed under the ring operations and contain 0 and 1).
RingPtr make_subring(const RingPtr& parent, std::vector<Elem> elements);

/// Result of closing a subset under +, -, * together with 0 and 1.
struct SubringClosure {
  std::vector<Elem> elements;  // sorted
  bool closed = false;         // the input set already was a subring
  std::optional<Elem> witness;  // least element of the closure outside the input
  /// A pair (a, b) from the input with a*b or a+b outside the input.
  std::optional<std::array<Elem, 2>> product_witness;
  bool witness_is_sum = false;
};

SubringClosure subring_closure(const FiniteRing& ring, std::span<const Elem> generators);

/// A view of a total map between two rings given by its value table.
struct RingMapView {
  const FiniteRing* domain = nullptr;
  const FiniteRing* codomain = nullptr;
  std::span<const Elem> values;
  Elem operator()(Elem a) const { return values[a]; }
};

/// The right regular representation a -> (x -> x a) of a bm ring with
/// module dimension 3, as 4x4 matrices over the base in the basis
/// (1, e_1, e_2, e_3). Rows are coordinates of basis_i * a.
struct RegularRepresentation {
  RingPtr codomain;
  std::vector<Elem> values;
};

RegularRepresentation regular_representation(const RingPtr& ring);

}  // namespace ringline
