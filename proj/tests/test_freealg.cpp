#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ringline/freealg.hpp"

using namespace ringline;

namespace {

FreePoly x(std::uint32_t k) { return FreePoly::var(k); }

// Continuant by brute force: sum over ways of deleting disjoint adjacent
// pairs (x_i x_{i+1}) from x_1..x_n, each deletion contributing a factor -1.
FreePoly continuant(std::uint32_t first, std::uint32_t last) {
  if (last + 1 < first) return FreePoly::constant(0);
  if (last + 1 == first) return FreePoly::constant(1);
  FreePoly keep = x(first) * continuant(first + 1, last);
  if (first == last) return keep;
  return keep - continuant(first + 2, last);
}

struct IntMod {
  Coeff n;
  Coeff zero() const { return 0; }
  Coeff one() const { return 1 % n; }
  Coeff add(Coeff a, Coeff b) const { return (a + b) % n; }
  Coeff mul(Coeff a, Coeff b) const { return (a * b) % n; }
  Coeff from_integer(Coeff c) const { return ((c % n) + n) % n; }
};

}  // namespace

TEST_CASE("canonical form drops zero terms and orders by degree") {
  FreePoly f = x(2) * x(1) + x(1) - x(1);
  CHECK(f == FreePoly::monomial({2, 1}));
  CHECK(f.degree() == 2);
  CHECK(f.max_index() == 2);
  CHECK((x(1) - x(1)).is_zero());
  CHECK((x(3) + x(1) * x(2) - FreePoly::constant(1)).to_string() == "-1 +x_3 +x_1 x_2");
  CHECK(x(1) * x(2) != x(2) * x(1));
}

TEST_CASE("small continuants") {
  CHECK(e_rec(-2) == FreePoly::constant(-1));
  CHECK(e_rec(-1).is_zero());
  CHECK(e_rec(0) == FreePoly::constant(1));
  CHECK(e_rec(1) == x(1));
  CHECK(e_rec(2) == x(1) * x(2) - FreePoly::constant(1));
  CHECK(e_rec(3) == x(1) * x(2) * x(3) - x(1) - x(3));
}

TEST_CASE("e^(n) matches the deletion expansion") {
  for (std::uint32_t n = 0; n <= 8; ++n) CHECK(e_rec(static_cast<int>(n)) == continuant(1, n));
}

TEST_CASE("e_i^j and te_i^j against the deletion expansion") {
  for (int i = 1; i <= 6; ++i)
    for (int j = i; j <= 6; ++j) {
      CHECK(e_ij(i, j) == continuant(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)));
      // Reversal: te_i^j is e^(j-i+1)(x_j, ..., x_i).
      std::vector<FreePoly> rev;
      for (int k = j; k >= i; --k) rev.push_back(x(static_cast<std::uint32_t>(k)));
      CHECK(te_ij(i, j) == substitute(e_rec(j - i + 1), rev));
    }
  CHECK(e_ij(3, 2) == FreePoly::constant(1));
  CHECK(e_ij(3, 1).is_zero());
  CHECK_THROWS_AS(e_ij(0, 2), std::out_of_range);
}

TEST_CASE("closed forms of E(x_1..x_n) and its inverse") {
  for (int n = 1; n <= 7; ++n) {
    SymMat2 prod = sym_E_product(n);
    CHECK(prod == sym_E(n));
    CHECK(sym_mul(prod, sym_E_inv(n)) == sym_identity());
    CHECK(sym_mul(sym_E_inv(n), prod) == sym_identity());
  }
}

TEST_CASE("generator inverse E(x)^{-1} = [[0,-1],[1,x]]") {
  SymMat2 inv{FreePoly(), FreePoly::constant(-1), FreePoly::constant(1), x(1)};
  CHECK(sym_mul(sym_generator(1), inv) == sym_identity());
}

TEST_CASE("substitution and truncation") {
  FreePoly f = x(1) * x(2) + x(3);
  CHECK(f.truncate_vars(2) == x(1) * x(2));
  std::vector<FreePoly> t{x(2), x(1)};
  CHECK(substitute(f, t) == x(2) * x(1));
  CHECK(var_window(3, 2).empty());
  CHECK(var_window(2, 4).size() == 3);
}

TEST_CASE("evaluation at integers mod n") {
  IntMod z7{7};
  std::vector<Coeff> t{2, 3, 4};
  // e^(3)(2,3,4) = 24 - 2 - 4 = 18 = 4 mod 7.
  CHECK(evaluate(e_rec(3), z7, std::span<const Coeff>(t)) == 4);
  // Missing indeterminates map to 0: e^(3)(2,3,0) = -2 = 5 mod 7.
  std::vector<Coeff> short_t{2, 3};
  CHECK(evaluate(e_rec(3), z7, std::span<const Coeff>(short_t)) == 5);
}

TEST_CASE("expression parser") {
  CHECK(parse_poly_expression("e 1 2") == e_ij(1, 2));
  CHECK(parse_poly_expression("e 1 3 * te 1 2 + 2 * x 1") == e_ij(1, 3) * te_ij(1, 2) + FreePoly::constant(2) * x(1));
  CHECK(parse_poly_expression("-3") == FreePoly::constant(-3));
  CHECK_THROWS(parse_poly_expression("e 1"));
  CHECK_THROWS(parse_poly_expression("y 2"));
}

TEST_CASE("coefficient overflow is detected") {
  FreePoly big = FreePoly::constant(INT64_MAX);
  CHECK_THROWS_AS(big + FreePoly::constant(1), std::overflow_error);
  CHECK_THROWS_AS(big * FreePoly::constant(2), std::overflow_error);
}

TEST_CASE("symbolic identity records all pass up to index 8") {
  auto records = verify_symbolic_identities(8);
  CHECK(!records.empty());
  for (const auto& r : records) {
    INFO(r.name << ": " << r.witness);
    CHECK(r.pass);
    CHECK(r.mode == Mode::exhaustive);
  }
}
