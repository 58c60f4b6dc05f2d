#pragma once

// Exact arithmetic in the free Z-algebra on indeterminates x_1, x_2, ...
// and the continuant-style polynomial family e^(n), e_i^j, te_i^j.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ringline/report.hpp"

namespace ringline {

using Coeff = std::int64_t;

/// A word in the indeterminates; index k >= 1 stands for x_k. The empty word
/// is the monomial 1.
using Word = std::vector<std::uint32_t>;

/// Degree first, then lexicographic on index sequences.
struct DegLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Noncommutative polynomial with integer coefficients, stored canonically
/// (degree-lex ordered, no zero coefficients). Coefficient overflow throws
/// std::overflow_error.
class FreePoly {
 public:
  using Terms = std::map<Word, Coeff, DegLex>;

  FreePoly() = default;
  static FreePoly constant(Coeff c);
  static FreePoly var(std::uint32_t index);
  static FreePoly monomial(Word word, Coeff c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const;
  /// Largest indeterminate index occurring (0 for constants).
  std::uint32_t max_index() const;
  /// Coefficient of `word` (0 if absent).
  Coeff coeff(const Word& word) const;

  /// Sets x_k = 0 for every k > n.
  FreePoly truncate_vars(std::uint32_t n) const;

  FreePoly& operator+=(const FreePoly& g);
  FreePoly& operator-=(const FreePoly& g);
  friend FreePoly operator+(FreePoly f, const FreePoly& g) { return f += g; }
  friend FreePoly operator-(FreePoly f, const FreePoly& g) { return f -= g; }
  friend FreePoly operator-(const FreePoly& f);
  friend FreePoly operator*(const FreePoly& f, const FreePoly& g);
  friend bool operator==(const FreePoly&, const FreePoly&) = default;

  /// Canonical text: terms in degree-lex order, e.g. "-x_1 -x_3 +x_1 x_2 x_3".
  std::string to_string() const;

 private:
  void add_term(const Word& word, Coeff c);
  Terms terms_;
};

/// Positional substitution x_i -> t[i-1] for i <= |t| and x_i -> 0 beyond.
FreePoly substitute(const FreePoly& f, std::span<const FreePoly> t);

/// Identity variables (x_first, ..., x_last); empty when last < first.
std::vector<FreePoly> var_window(std::uint32_t first, std::uint32_t last);

/// Evaluates f at a finite sequence in any ring providing zero(), one(),
/// add, mul, neg and from_integer. Indeterminates past the end map to 0.
template <class Ring, class Elem>
Elem evaluate(const FreePoly& f, const Ring& ring, std::span<const Elem> t) {
  Elem acc = ring.zero();
  for (const auto& [word, c] : f.terms()) {
    Elem term = ring.from_integer(c);
    bool vanished = false;
    for (std::uint32_t k : word) {
      if (k > t.size()) {
        vanished = true;
        break;
      }
      term = ring.mul(term, t[k - 1]);
    }
    if (!vanished) acc = ring.add(acc, term);
  }
  return acc;
}

/// e^(n) for n >= -2; memoized and safe to call concurrently.
const FreePoly& e_rec(int n);

/// e_i^j = e^(j-i+1)(x_i, ..., x_j) for i >= 1, j >= i-3 (j is an upper
/// index). Throws std::out_of_range otherwise.
const FreePoly& e_ij(int i, int j);
/// te_i^j = e^(j-i+1)(x_j, ..., x_i).
const FreePoly& te_ij(int i, int j);

/// 2x2 matrix over the free algebra.
struct SymMat2 {
  FreePoly a, b, c, d;
  friend bool operator==(const SymMat2&, const SymMat2&) = default;
};

SymMat2 sym_identity();
SymMat2 sym_mul(const SymMat2& m, const SymMat2& n);
/// The generator E(x_k) = [[x_k, 1], [-1, 0]].
SymMat2 sym_generator(std::uint32_t k);
/// Closed form of E(x_1, ..., x_n) = [[e_1^n, e_1^{n-1}], [-e_2^n, -e_2^{n-1}]].
SymMat2 sym_E(int n);
/// Closed form of E(x_1, ..., x_n)^{-1} = [[-te_2^{n-1}, -te_1^{n-1}], [te_2^n, te_1^n]].
SymMat2 sym_E_inv(int n);
/// E(x_1) E(x_2) ... E(x_n) by repeated multiplication.
SymMat2 sym_E_product(int n);

/// Exact symbolic verification, for all indices up to max_index, of the
/// left and right recurrences of e_i^j and te_i^j, the closed forms of
/// E(x_1..x_n) and its inverse, and the shift/padding rewrites.
std::vector<CheckResult> verify_symbolic_identities(int max_index);

/// Parses expressions like "e 1 4 * te 1 3 + 2 * x 1" into a polynomial.
/// Grammar: sum of products; factors are "e i j", "te i j", "x k", integers.
FreePoly parse_poly_expression(const std::string& text);

}  // namespace ringline
