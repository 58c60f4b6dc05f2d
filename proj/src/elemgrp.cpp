#include "ringline/elemgrp.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ringline {

Mat2 identity(const FiniteRing& R) { return {R.one(), 0, 0, R.one()}; }

Mat2 diag(Elem a, Elem d) { return {a, 0, 0, d}; }

Mat2 E(const FiniteRing& R, Elem t) { return {t, R.one(), R.neg(R.one()), 0}; }

Mat2 mul_E(const FiniteRing& R, const Mat2& m, Elem t) {
  return {R.sub(R.mul(m.a, t), m.b), m.a, R.sub(R.mul(m.c, t), m.d), m.c};
}

Mat2 E_word(const FiniteRing& R, std::span<const Elem> T) {
  Mat2 m = identity(R);
  for (Elem t : T) m = mul_E(R, m, t);
  return m;
}

Mat2 mul(const FiniteRing& R, const Mat2& m, const Mat2& n) {
  return {R.add(R.mul(m.a, n.a), R.mul(m.b, n.c)), R.add(R.mul(m.a, n.b), R.mul(m.b, n.d)),
          R.add(R.mul(m.c, n.a), R.mul(m.d, n.c)), R.add(R.mul(m.c, n.b), R.mul(m.d, n.d))};
}

Row act(const FiniteRing& R, Row v, const Mat2& m) {
  return {R.add(R.mul(v[0], m.a), R.mul(v[1], m.c)), R.add(R.mul(v[0], m.b), R.mul(v[1], m.d))};
}

Row act_E(const FiniteRing& R, Row v, Elem t) { return {R.sub(R.mul(v[0], t), v[1]), v[0]}; }

bool is_diagonal(const Mat2& m) { return m.b == 0 && m.c == 0; }

std::string to_string(const FiniteRing& R, const Mat2& m) {
  return "[[" + R.name(m.a) + ", " + R.name(m.b) + "], [" + R.name(m.c) + ", " + R.name(m.d) + "]]";
}

std::string to_string(const FiniteRing& R, std::span<const Elem> T) {
  std::string out = "(";
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (i) out += ", ";
    out += R.name(T[i]);
  }
  return out + ")";
}

namespace {

// Lookup of y by the row (y c, y d). Dense for small rings.
class RowIndex {
 public:
  RowIndex(const FiniteRing& R, Elem c, Elem d) : n_(R.size()), dense_(n_ <= 1024) {
    if (dense_) {
      thread_local std::vector<std::uint32_t> value, stamp;
      thread_local std::uint32_t generation = 0;
      if (value.size() < n_ * n_) {
        value.assign(n_ * n_, 0);
        stamp.assign(n_ * n_, 0);
      }
      if (++generation == 0) {
        std::fill(stamp.begin(), stamp.end(), 0);
        generation = 1;
      }
      value_ = &value;
      stamp_ = &stamp;
      generation_ = generation;
    }
    for (Elem y = 0; y < n_ && !collision_; ++y) {
      const std::uint64_t key = std::uint64_t{R.mul(y, c)} * n_ + R.mul(y, d);
      if (auto prev = find_key(key)) {
        collision_ = Row{0, R.sub(y, *prev)};
      } else {
        insert(key, y);
      }
    }
  }
  const std::optional<Row>& collision() const { return collision_; }
  std::optional<Elem> find(Elem p, Elem q) const { return find_key(std::uint64_t{p} * n_ + q); }

 private:
  std::optional<Elem> find_key(std::uint64_t key) const {
    if (dense_) {
      if ((*stamp_)[key] != generation_) return std::nullopt;
      return (*value_)[key];
    }
    const auto it = sparse_.find(key);
    if (it == sparse_.end()) return std::nullopt;
    return it->second;
  }
  void insert(std::uint64_t key, Elem y) {
    if (dense_) {
      (*stamp_)[key] = generation_;
      (*value_)[key] = y;
    } else {
      sparse_.emplace(key, y);
    }
  }

  std::size_t n_;
  bool dense_;
  std::vector<std::uint32_t>* value_ = nullptr;
  std::vector<std::uint32_t>* stamp_ = nullptr;
  std::uint32_t generation_ = 0;
  std::unordered_map<std::uint64_t, Elem> sparse_;
  std::optional<Row> collision_;
};

}  // namespace

std::variant<Mat2, NonInvertible> invert(const FiniteRing& R, const Mat2& m) {
  const RowIndex index(R, m.c, m.d);
  if (index.collision()) return NonInvertible{*index.collision()};
  std::optional<Row> first, second;
  for (Elem x = 0; x < R.size(); ++x) {
    const Elem xa = R.mul(x, m.a), xb = R.mul(x, m.b);
    if (x != 0) {
      if (auto y = index.find(R.neg(xa), R.neg(xb))) return NonInvertible{Row{x, *y}};
    }
    if (!first)
      if (auto y = index.find(R.sub(R.one(), xa), R.neg(xb))) first = Row{x, *y};
    if (!second)
      if (auto y = index.find(R.neg(xa), R.sub(R.one(), xb))) second = Row{x, *y};
  }
  if (!first || !second) throw std::logic_error("row action injective but not surjective");
  return Mat2{(*first)[0], (*first)[1], (*second)[0], (*second)[1]};
}

std::optional<Mat2> try_invert(const FiniteRing& R, const Mat2& m) {
  auto result = invert(R, m);
  if (auto* inv = std::get_if<Mat2>(&result)) return *inv;
  return std::nullopt;
}

bool is_invertible(const FiniteRing& R, const Mat2& m) { return try_invert(R, m).has_value(); }

ParamSeq word_inverse(const FiniteRing& R, std::span<const Elem> T) {
  ParamSeq out;
  out.reserve(3 * T.size());
  for (std::size_t i = T.size(); i-- > 0;) {
    out.push_back(0);
    out.push_back(R.neg(T[i]));
    out.push_back(0);
  }
  return out;
}

std::optional<std::size_t> GroupTable::find(const Mat2& m) const {
  const auto it = index.find(m);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

ParamSeq GroupTable::witness(std::size_t i) const {
  ParamSeq out;
  for (std::int64_t k = static_cast<std::int64_t>(i); parent[k] >= 0; k = parent[k]) out.push_back(letter[k]);
  std::reverse(out.begin(), out.end());
  return out;
}

GroupTable enumerate_E2(const FiniteRing& R, std::size_t cap) {
  GroupTable g;
  const Mat2 id = identity(R);
  g.elements.push_back(id);
  g.parent.push_back(-1);
  g.letter.push_back(0);
  g.index.emplace(id, 0);
  for (std::size_t i = 0; i < g.elements.size(); ++i) {
    const Mat2 m = g.elements[i];
    for (Elem t = 0; t < R.size(); ++t) {
      const Mat2 n = mul_E(R, m, t);
      if (g.index.emplace(n, g.elements.size()).second) {
        if (g.elements.size() >= cap)
          throw RingError("E_2 enumeration over " + R.description() + " exceeds cap " + std::to_string(cap));
        g.elements.push_back(n);
        g.parent.push_back(static_cast<std::int64_t>(i));
        g.letter.push_back(t);
      }
    }
  }
  return g;
}

bool is_scalar_central(const FiniteRing& R, const Mat2& m) {
  return m.b == 0 && m.c == 0 && m.a == m.d && R.is_central(m.a) && R.is_unit(m.a);
}

CentreH centre_H(const FiniteRing& R, const GroupTable& table) {
  CentreH out;
  for (Elem a : R.centre()) {
    if (!R.is_unit(a)) continue;
    const Mat2 m = diag(a, a);
    if (table.contains(m)) out.elements.push_back(m);
  }
  std::sort(out.elements.begin(), out.elements.end());
  std::vector<Mat2> commutant;
  for (const Mat2& m : table.elements) {
    bool commutes = true;
    for (Elem t = 0; t < R.size() && commutes; ++t) {
      const Mat2 e = E(R, t);
      commutes = mul(R, m, e) == mul(R, e, m);
    }
    if (commutes) commutant.push_back(m);
  }
  std::sort(commutant.begin(), commutant.end());
  out.agrees_with_commutant = commutant == out.elements;
  return out;
}

namespace {

void scalar_rec(const FiniteRing& R, ParamSeq& prefix, const Mat2& m, std::size_t remaining,
                const std::function<void(std::span<const Elem>, Elem)>& fn) {
  // m = E(prefix); E(prefix, t) = diag(a, a) iff m = [[0, -a], [a, a t]].
  if (m.a == 0 && m.b == R.neg(m.c) && R.is_central(m.c)) {
    if (auto inv = R.try_inverse(m.c)) {
      prefix.push_back(R.mul(*inv, m.d));
      fn(prefix, m.c);
      prefix.pop_back();
    }
  }
  if (remaining <= 1) return;
  for (Elem t = 0; t < R.size(); ++t) {
    prefix.push_back(t);
    scalar_rec(R, prefix, mul_E(R, m, t), remaining - 1, fn);
    prefix.pop_back();
  }
}

void for_each_identity_relation(const FiniteRing& R, std::size_t max_len,
                                const std::function<void(std::span<const Elem>)>& fn) {
  for_each_scalar_word(R, max_len, [&](std::span<const Elem> T, Elem a) {
    if (a == R.one()) fn(T);
  });
}

}  // namespace

void for_each_scalar_word(const FiniteRing& R, std::size_t max_len,
                          const std::function<void(std::span<const Elem>, Elem)>& fn) {
  ParamSeq prefix;
  fn(prefix, R.one());
  if (max_len == 0) return;
  scalar_rec(R, prefix, identity(R), max_len, fn);
}

std::vector<ParamSeq> identity_relations(const FiniteRing& R, std::size_t max_len) {
  std::vector<ParamSeq> out;
  for_each_identity_relation(R, max_len, [&](std::span<const Elem> T) { out.emplace_back(T.begin(), T.end()); });
  std::sort(out.begin(), out.end(), [](const ParamSeq& x, const ParamSeq& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

NAlpha n_alpha(const RingMapView& alpha, std::size_t max_len, std::size_t cap) {
  const FiniteRing& R = *alpha.domain;
  const FiniteRing& Rp = *alpha.codomain;
  NAlpha out;
  out.max_len = max_len;
  std::map<Mat2, ParamSeq> found;
  ParamSeq image;
  for_each_identity_relation(R, max_len, [&](std::span<const Elem> T) {
    ++out.relations;
    image.clear();
    for (Elem t : T) image.push_back(alpha(t));
    const Mat2 m = E_word(Rp, image);
    const auto it = found.find(m);
    if (it == found.end()) {
      found.emplace(m, ParamSeq(T.begin(), T.end()));
    } else if (T.size() < it->second.size() ||
               (T.size() == it->second.size() && std::lexicographical_compare(T.begin(), T.end(), it->second.begin(),
                                                                              it->second.end()))) {
      it->second.assign(T.begin(), T.end());
    }
  });
  for (auto& [m, word] : found) {
    out.generators.push_back(m);
    out.generator_words.push_back(word);
  }
  std::set<Mat2> group{identity(Rp)};
  std::deque<Mat2> queue{identity(Rp)};
  while (!queue.empty()) {
    const Mat2 m = queue.front();
    queue.pop_front();
    for (const Mat2& g : out.generators) {
      const Mat2 n = mul(Rp, m, g);
      if (group.insert(n).second) {
        if (group.size() > cap) throw RingError("subgroup generated by N_alpha images exceeds cap");
        queue.push_back(n);
      }
    }
  }
  out.subgroup.assign(group.begin(), group.end());
  return out;
}

std::optional<Elem> find_conjugate_off_diagonal(const FiniteRing& R, const Mat2& m) {
  for (Elem r = 0; r < R.size(); ++r) {
    const Mat2 e = E(R, r);
    const Mat2 e_inv{0, R.neg(R.one()), R.one(), r};
    if (!is_diagonal(mul(R, mul(R, e_inv, m), e))) return r;
  }
  return std::nullopt;
}

namespace {

CheckResult from_sweep(std::string name, std::string anchor, const FiniteRing& R, const SweepOutcome& s,
                       const std::string& what) {
  CheckResult r{std::move(name), std::move(anchor)};
  r.mode = s.mode;
  r.cases = s.cases;
  if (s.first_failure) r.fail(what + " at T = " + to_string(R, *s.first_failure) + " over " + R.description());
  return r;
}

}  // namespace

CheckResult check_conjugation_identity(const FiniteRing& R, std::size_t max_len, const SweepBudget& budget) {
  const auto s = sweep_words(R.size(), max_len + 1, budget, [&](std::span<const Elem> W) {
    if (W.empty()) return true;
    const Elem s = W[0];
    const auto T = W.subspan(1);
    ParamSeq S(W.begin(), W.end());
    S.push_back(0);
    S.push_back(R.neg(s));
    S.push_back(0);
    const auto e_inv = try_invert(R, E(R, s));
    if (!e_inv) return false;
    return E_word(R, S) == mul(R, mul(R, E(R, s), E_word(R, T)), *e_inv);
  });
  return from_sweep("elemgrp/conjugation-identity", "E(s,T,0,-s,0) = E(s)E(T)E(s)^{-1}", R, s,
                    "E(s,T,0,-s,0) differs from E(s)E(T)E(s)^{-1}");
}

CheckResult check_word_closed_form(const FiniteRing& R, std::size_t max_len, const SweepBudget& budget) {
  struct Forms {
    const FreePoly *e1n, *e1m, *e2n, *e2m, *te1n, *te1m, *te2n, *te2m;
  };
  std::vector<Forms> forms;
  for (int n = 0; n <= static_cast<int>(max_len); ++n)
    forms.push_back({&e_ij(1, n), &e_ij(1, n - 1), &e_ij(2, n), &e_ij(2, n - 1), &te_ij(1, n), &te_ij(1, n - 1),
                     &te_ij(2, n), &te_ij(2, n - 1)});
  const auto s = sweep_words(R.size(), max_len, budget, [&](std::span<const Elem> T) {
    const Forms& f = forms[T.size()];
    const auto ev = [&](const FreePoly* p) { return evaluate<FiniteRing, Elem>(*p, R, T); };
    const Mat2 m = E_word(R, T);
    const Mat2 closed{ev(f.e1n), ev(f.e1m), R.neg(ev(f.e2n)), R.neg(ev(f.e2m))};
    const Mat2 inv{R.neg(ev(f.te2m)), R.neg(ev(f.te1m)), ev(f.te2n), ev(f.te1n)};
    return m == closed && mul(R, m, inv) == identity(R) && mul(R, inv, m) == identity(R);
  });
  return from_sweep("elemgrp/word-closed-form", "E(T) = [[e_1^n(T), e_1^{n-1}(T)], [-e_2^n(T), -e_2^{n-1}(T)]]", R,
                    s, "E(T) or its inverse disagrees with the closed form");
}

CheckResult check_unit_reversal(const FiniteRing& R, std::size_t max_len, const SweepBudget& budget) {
  std::vector<std::pair<const FreePoly*, const FreePoly*>> forms;
  for (int n = 0; n <= static_cast<int>(max_len); ++n) forms.emplace_back(&e_ij(1, n), &te_ij(1, n));
  const auto s = sweep_words(R.size(), max_len, budget, [&](std::span<const Elem> T) {
    const auto& [e, te] = forms[T.size()];
    if (!R.is_unit(evaluate<FiniteRing, Elem>(*e, R, T))) return true;
    return R.is_unit(evaluate<FiniteRing, Elem>(*te, R, T));
  });
  return from_sweep("prop25/" + R.description(), "e_1^n(T) in R* implies te_1^n(T) in R*", R, s,
                    "e_1^n(T) is a unit but te_1^n(T) is not");
}

CheckResult check_word_inverse(const FiniteRing& R, std::size_t max_len, const SweepBudget& budget) {
  const auto s = sweep_words(R.size(), max_len, budget, [&](std::span<const Elem> T) {
    const ParamSeq hat = word_inverse(R, T);
    return hat.size() == 3 * T.size() && mul(R, E_word(R, hat), E_word(R, T)) == identity(R) &&
           mul(R, E_word(R, T), E_word(R, hat)) == identity(R);
  });
  return from_sweep("elemgrp/word-inverse", "E(T^) = E(T)^{-1}", R, s, "E(T^) is not the inverse of E(T)");
}

}  // namespace ringline
