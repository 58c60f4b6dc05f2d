#pragma once

// 2x2 matrices over a finite ring and the elementary group E_2(R) generated
// by E(t) = [[t, 1], [-1, 0]].

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ringline/report.hpp"
#include "ringline/rings.hpp"

namespace ringline {

struct Mat2 {
  Elem a = 0, b = 0, c = 0, d = 0;
  friend bool operator==(const Mat2&, const Mat2&) = default;
  friend auto operator<=>(const Mat2&, const Mat2&) = default;
};

struct Mat2Hash {
  std::size_t operator()(const Mat2& m) const noexcept {
    std::uint64_t h = m.a;
    h = h * 0x9e3779b97f4a7c15ULL + m.b;
    h = h * 0x9e3779b97f4a7c15ULL + m.c;
    h = h * 0x9e3779b97f4a7c15ULL + m.d;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

using Row = std::array<Elem, 2>;

Mat2 identity(const FiniteRing& R);
Mat2 diag(Elem a, Elem d);
Mat2 E(const FiniteRing& R, Elem t);
Mat2 E_word(const FiniteRing& R, std::span<const Elem> T);
Mat2 mul(const FiniteRing& R, const Mat2& m, const Mat2& n);
/// m * E(t) = [[a t - b, a], [c t - d, c]].
Mat2 mul_E(const FiniteRing& R, const Mat2& m, Elem t);
/// Row vector times matrix.
Row act(const FiniteRing& R, Row v, const Mat2& m);
/// v * E(t) = (x t - y, x).
Row act_E(const FiniteRing& R, Row v, Elem t);
bool is_diagonal(const Mat2& m);
std::string to_string(const FiniteRing& R, const Mat2& m);
std::string to_string(const FiniteRing& R, std::span<const Elem> T);

/// A nonzero row vector v with v M = 0, so v and 0 have the same image.
struct NonInvertible {
  Row kernel;
};

/// Two-sided inverse, found by solving v M = (1,0) and v M = (0,1) in
/// O(|R|) per row. A one-sided inverse suffices in a finite matrix ring.
std::variant<Mat2, NonInvertible> invert(const FiniteRing& R, const Mat2& m);
std::optional<Mat2> try_invert(const FiniteRing& R, const Mat2& m);
bool is_invertible(const FiniteRing& R, const Mat2& m);

/// (0, -t_n, 0, 0, -t_{n-1}, 0, ..., 0, -t_1, 0) of length 3n, so that
/// E(word_inverse(T)) = E(T)^{-1}.
ParamSeq word_inverse(const FiniteRing& R, std::span<const Elem> T);

/// E_2(R) by breadth-first closure under right multiplication by E(t), t in
/// index order; each element keeps the first minimal-length word found.
struct GroupTable {
  std::vector<Mat2> elements;
  std::vector<std::int64_t> parent;  // -1 for the identity
  std::vector<Elem> letter;
  std::unordered_map<Mat2, std::size_t, Mat2Hash> index;

  std::size_t size() const { return elements.size(); }
  bool contains(const Mat2& m) const { return index.count(m) != 0; }
  std::optional<std::size_t> find(const Mat2& m) const;
  ParamSeq witness(std::size_t i) const;
};

/// Throws RingError when more than `cap` matrices are reached.
GroupTable enumerate_E2(const FiniteRing& R, std::size_t cap = 1'000'000);

/// H = E_2(R) ∩ {diag(a, a) : a in Z(R)*}, with a cross-check against the
/// elements of the table that commute with every E(t).
struct CentreH {
  std::vector<Mat2> elements;  // sorted
  bool agrees_with_commutant = false;
};

CentreH centre_H(const FiniteRing& R, const GroupTable& table);

/// diag(a, a) with a a central unit of R.
bool is_scalar_central(const FiniteRing& R, const Mat2& m);

/// All T with |T| <= max_len and E(T) = I. The last letter is solved from
/// the prefix: E(P, t) = I iff E(P) = E(t)^{-1} = [[0, -1], [1, t]].
std::vector<ParamSeq> identity_relations(const FiniteRing& R, std::size_t max_len);

/// Calls fn(T, a) for every T with |T| <= max_len and E(T) = diag(a, a),
/// a a central unit (that is, E(T) in H), in depth-first prefix order.
void for_each_scalar_word(const FiniteRing& R, std::size_t max_len,
                          const std::function<void(std::span<const Elem>, Elem)>& fn);

/// N_alpha restricted to relations of length <= max_len: the images
/// E(T^alpha) and the subgroup of E_2(R') they generate. `bounded` is always
/// set; the full N_alpha may be larger.
struct NAlpha {
  std::vector<Mat2> generators;       // distinct images, sorted
  std::vector<ParamSeq> generator_words;  // a relation T producing each generator
  std::vector<Mat2> subgroup;         // sorted
  std::uint64_t relations = 0;
  std::size_t max_len = 0;
  bool bounded = true;
};

NAlpha n_alpha(const RingMapView& alpha, std::size_t max_len, std::size_t cap = 100'000);

/// Some r with E(r)^{-1} M E(r) not diagonal, searching r in index order.
std::optional<Elem> find_conjugate_off_diagonal(const FiniteRing& R, const Mat2& m);

/// E(s,T,0,-s,0) = E(s) E(T) E(s)^{-1} for all s and |T| <= max_len.
CheckResult check_conjugation_identity(const FiniteRing& R, std::size_t max_len, const SweepBudget& budget);
/// First row of E(T) equals (e_1^n(T), e_1^{n-1}(T)) and E(T)^{-1} matches
/// the closed form, for |T| <= max_len.
CheckResult check_word_closed_form(const FiniteRing& R, std::size_t max_len, const SweepBudget& budget);
/// e_1^n(T) a unit implies te_1^n(T) a unit, for |T| <= max_len.
CheckResult check_unit_reversal(const FiniteRing& R, std::size_t max_len, const SweepBudget& budget);
/// E(word_inverse(T)) E(T) = I for |T| <= max_len.
CheckResult check_word_inverse(const FiniteRing& R, std::size_t max_len, const SweepBudget& budget);

}  // namespace ringline
