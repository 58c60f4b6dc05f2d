#include "ringline/freealg.hpp"

#include <cctype>
#include <deque>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace ringline {

namespace {

Coeff checked_add(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("FreePoly coefficient overflow");
  return r;
}

Coeff checked_mul(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("FreePoly coefficient overflow");
  return r;
}

}  // namespace

FreePoly FreePoly::constant(Coeff c) {
  FreePoly f;
  f.add_term({}, c);
  return f;
}

FreePoly FreePoly::var(std::uint32_t index) {
  if (index == 0) throw std::out_of_range("indeterminate indices start at 1");
  return monomial({index});
}

FreePoly FreePoly::monomial(Word word, Coeff c) {
  for (auto k : word)
    if (k == 0) throw std::out_of_range("indeterminate indices start at 1");
  FreePoly f;
  f.add_term(word, c);
  return f;
}

void FreePoly::add_term(const Word& word, Coeff c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(word, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

std::size_t FreePoly::degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }

std::uint32_t FreePoly::max_index() const {
  std::uint32_t m = 0;
  for (const auto& [word, c] : terms_)
    for (auto k : word) m = std::max(m, k);
  return m;
}

Coeff FreePoly::coeff(const Word& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? 0 : it->second;
}

FreePoly FreePoly::truncate_vars(std::uint32_t n) const {
  FreePoly out;
  for (const auto& [word, c] : terms_) {
    bool keep = true;
    for (auto k : word) keep = keep && k <= n;
    if (keep) out.terms_.emplace_hint(out.terms_.end(), word, c);
  }
  return out;
}

FreePoly& FreePoly::operator+=(const FreePoly& g) {
  for (const auto& [word, c] : g.terms_) add_term(word, c);
  return *this;
}

FreePoly& FreePoly::operator-=(const FreePoly& g) {
  for (const auto& [word, c] : g.terms_) add_term(word, checked_mul(c, -1));
  return *this;
}

FreePoly operator-(const FreePoly& f) {
  FreePoly out;
  for (const auto& [word, c] : f.terms_) out.terms_.emplace_hint(out.terms_.end(), word, checked_mul(c, -1));
  return out;
}

FreePoly operator*(const FreePoly& f, const FreePoly& g) {
  FreePoly out;
  Word word;
  for (const auto& [u, a] : f.terms_) {
    for (const auto& [v, b] : g.terms_) {
      word.assign(u.begin(), u.end());
      word.insert(word.end(), v.begin(), v.end());
      out.add_term(word, checked_mul(a, b));
    }
  }
  return out;
}

std::string FreePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [word, c] : terms_) {
    if (!first) out << ' ';
    first = false;
    out << (c < 0 ? '-' : '+');
    const Coeff magnitude = c < 0 ? -c : c;
    if (word.empty()) {
      out << magnitude;
      continue;
    }
    if (magnitude != 1) out << magnitude << ' ';
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (i) out << ' ';
      out << "x_" << word[i];
    }
  }
  std::string s = out.str();
  // A leading "+" is redundant.
  if (s.front() == '+') s.erase(0, 1);
  return s;
}

FreePoly substitute(const FreePoly& f, std::span<const FreePoly> t) {
  FreePoly out;
  for (const auto& [word, c] : f.terms()) {
    FreePoly term = FreePoly::constant(c);
    for (auto k : word) {
      if (k > t.size()) {
        term = FreePoly();
        break;
      }
      term = term * t[k - 1];
    }
    out += term;
  }
  return out;
}

std::vector<FreePoly> var_window(std::uint32_t first, std::uint32_t last) {
  std::vector<FreePoly> out;
  for (std::uint32_t k = first; k <= last && last >= first; ++k) out.push_back(FreePoly::var(k));
  return out;
}

namespace {

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

const FreePoly& e_rec(int n) {
  if (n < -2) throw std::out_of_range("e^(n) requires n >= -2");
  static std::deque<FreePoly> cache;  // cache[k] = e^(k-2)
  std::lock_guard lock(cache_mutex());
  if (cache.empty()) {
    cache.push_back(FreePoly::constant(-1));
    cache.push_back(FreePoly());
    cache.push_back(FreePoly::constant(1));
  }
  while (cache.size() < static_cast<std::size_t>(n) + 3) {
    const auto k = static_cast<std::uint32_t>(cache.size() - 2);
    cache.push_back(cache[k + 1] * FreePoly::var(k) - cache[k]);
  }
  return cache[static_cast<std::size_t>(n) + 2];
}

namespace {

const FreePoly& windowed(int i, int j, bool reversed) {
  if (i < 1 || j < i - 3) throw std::out_of_range("e_i^j requires i >= 1 and j >= i-3");
  static std::map<std::tuple<int, int, bool>, FreePoly> cache;
  {
    std::lock_guard lock(cache_mutex());
    auto it = cache.find({i, j, reversed});
    if (it != cache.end()) return it->second;
  }
  const FreePoly& base = e_rec(j - i + 1);
  std::vector<FreePoly> window;
  if (reversed) {
    for (int k = j; k >= i; --k) window.push_back(FreePoly::var(static_cast<std::uint32_t>(k)));
  } else {
    window = var_window(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(std::max(j, i - 1)));
  }
  FreePoly value = substitute(base, window);
  std::lock_guard lock(cache_mutex());
  return cache.try_emplace({i, j, reversed}, std::move(value)).first->second;
}

}  // namespace

const FreePoly& e_ij(int i, int j) { return windowed(i, j, false); }
const FreePoly& te_ij(int i, int j) { return windowed(i, j, true); }

SymMat2 sym_identity() { return {FreePoly::constant(1), FreePoly(), FreePoly(), FreePoly::constant(1)}; }

SymMat2 sym_mul(const SymMat2& m, const SymMat2& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

SymMat2 sym_generator(std::uint32_t k) {
  return {FreePoly::var(k), FreePoly::constant(1), FreePoly::constant(-1), FreePoly()};
}

SymMat2 sym_E(int n) {
  if (n < 0) throw std::out_of_range("sym_E requires n >= 0");
  return {e_ij(1, n), e_ij(1, n - 1), -e_ij(2, n), -e_ij(2, n - 1)};
}

SymMat2 sym_E_inv(int n) {
  if (n < 0) throw std::out_of_range("sym_E_inv requires n >= 0");
  return {-te_ij(2, n - 1), -te_ij(1, n - 1), te_ij(2, n), te_ij(1, n)};
}

SymMat2 sym_E_product(int n) {
  SymMat2 m = sym_identity();
  for (int k = 1; k <= n; ++k) m = sym_mul(m, sym_generator(static_cast<std::uint32_t>(k)));
  return m;
}

std::vector<CheckResult> verify_symbolic_identities(int max_index) {
  std::vector<CheckResult> out;
  auto x = [](int k) { return FreePoly::var(static_cast<std::uint32_t>(k)); };
  auto pair_label = [](int i, int j) {
    return "i=" + std::to_string(i) + " j=" + std::to_string(j);
  };

  auto sweep_ij = [&](const std::string& name, const std::string& anchor, auto&& holds) {
    CheckResult r{name, anchor};
    for (int i = 1; i <= max_index; ++i)
      for (int j = i; j <= max_index; ++j) {
        ++r.cases;
        if (!holds(i, j)) r.fail(pair_label(i, j));
      }
    out.push_back(std::move(r));
  };

  sweep_ij("symbolic/e-right-recurrence", "e_i^j = e_i^{j-1} x_j - e_i^{j-2}",
           [&](int i, int j) { return e_ij(i, j) == e_ij(i, j - 1) * x(j) - e_ij(i, j - 2); });
  sweep_ij("symbolic/te-right-recurrence", "te_i^j = te_{i+1}^j x_i - te_{i+2}^j",
           [&](int i, int j) { return te_ij(i, j) == te_ij(i + 1, j) * x(i) - te_ij(i + 2, j); });
  sweep_ij("symbolic/e-left-recurrence", "e_i^j = x_i e_{i+1}^j - e_{i+2}^j",
           [&](int i, int j) { return e_ij(i, j) == x(i) * e_ij(i + 1, j) - e_ij(i + 2, j); });
  sweep_ij("symbolic/te-left-recurrence", "te_i^j = x_j te_i^{j-1} - te_i^{j-2}",
           [&](int i, int j) { return te_ij(i, j) == x(j) * te_ij(i, j - 1) - te_ij(i, j - 2); });
  sweep_ij("symbolic/monomial-shape", "e_i^j uses increasing words in [i,j], te_i^j decreasing", [&](int i, int j) {
    auto within = [&](const Word& w, bool increasing) {
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (static_cast<int>(w[k]) < i || static_cast<int>(w[k]) > j) return false;
        if (k && (increasing ? w[k - 1] >= w[k] : w[k - 1] <= w[k])) return false;
      }
      return true;
    };
    for (const auto& [w, c] : e_ij(i, j).terms())
      if (!within(w, true)) return false;
    for (const auto& [w, c] : te_ij(i, j).terms())
      if (!within(w, false)) return false;
    return true;
  });

  {
    CheckResult r{"symbolic/e-word-closed-form", "E(x_1..x_n) = [[e_1^n, e_1^{n-1}], [-e_2^n, -e_2^{n-1}]]"};
    for (int n = 0; n <= max_index; ++n) {
      ++r.cases;
      if (!(sym_E(n) == sym_E_product(n))) r.fail("n=" + std::to_string(n));
    }
    out.push_back(std::move(r));
  }
  {
    CheckResult r{"symbolic/e-word-inverse", "E(x_1..x_n)^{-1} = [[-te_2^{n-1}, -te_1^{n-1}], [te_2^n, te_1^n]]"};
    const SymMat2 id = sym_identity();
    for (int n = 0; n <= max_index; ++n) {
      ++r.cases;
      const SymMat2 e = sym_E_product(n);
      const SymMat2 inv = sym_E_inv(n);
      if (!(sym_mul(e, inv) == id) || !(sym_mul(inv, e) == id)) r.fail("n=" + std::to_string(n));
    }
    out.push_back(std::move(r));
  }
  {
    CheckResult r{"symbolic/e-base-cases", "e^(n) = e_1^n and e_i^{i-3..i-1} = -1, 0, 1"};
    for (int n = -2; n <= max_index; ++n) {
      ++r.cases;
      if (!(e_rec(n) == e_ij(1, n))) r.fail("n=" + std::to_string(n));
    }
    for (int i = 1; i <= max_index; ++i) {
      r.cases += 3;
      if (!(e_ij(i, i - 3) == FreePoly::constant(-1)) || !e_ij(i, i - 2).is_zero() ||
          !(e_ij(i, i - 1) == FreePoly::constant(1)))
        r.fail("i=" + std::to_string(i));
    }
    out.push_back(std::move(r));
  }
  {
    // Symbolic s and v live on indices past every x_k used by T.
    CheckResult r{"symbolic/shift-and-padding", "e_1^n(T) = e_2^{n+1}(s,T) = e_1^n(T,v)"};
    const auto s = x(max_index + 1);
    const auto v = x(max_index + 2);
    for (int n = 0; n <= max_index; ++n) {
      ++r.cases;
      const auto t = var_window(1, static_cast<std::uint32_t>(n));
      std::vector<FreePoly> shifted{s};
      shifted.insert(shifted.end(), t.begin(), t.end());
      std::vector<FreePoly> padded = t;
      padded.push_back(v);
      const FreePoly lhs = substitute(e_ij(1, n), t);
      if (!(lhs == substitute(e_ij(2, n + 1), shifted)) || !(lhs == substitute(e_ij(1, n), padded)))
        r.fail("n=" + std::to_string(n));
    }
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

struct PolyParser {
  std::vector<std::string> tokens;
  std::size_t pos = 0;

  explicit PolyParser(const std::string& text) {
    std::string cur;
    auto flush = [&] {
      if (!cur.empty()) tokens.push_back(cur);
      cur.clear();
    };
    for (char ch : text) {
      if (std::isspace(static_cast<unsigned char>(ch))) {
        flush();
      } else if (ch == '*' || ch == '+' || ch == '-' || ch == '(' || ch == ')') {
        flush();
        tokens.emplace_back(1, ch);
      } else {
        cur.push_back(ch);
      }
    }
    flush();
  }

  bool at(const std::string& tok) const { return pos < tokens.size() && tokens[pos] == tok; }

  int integer() {
    if (pos >= tokens.size()) throw std::invalid_argument("polynomial expression: unexpected end");
    const std::string& tok = tokens[pos++];
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || tok.empty()) throw std::invalid_argument("polynomial expression: expected integer, got '" + tok + "'");
    return value;
  }

  FreePoly factor() {
    if (at("(")) {
      ++pos;
      FreePoly f = sum();
      if (!at(")")) throw std::invalid_argument("polynomial expression: missing ')'");
      ++pos;
      return f;
    }
    if (at("-")) {
      ++pos;
      return -factor();
    }
    if (at("e") || at("te")) {
      const bool reversed = tokens[pos++] == "te";
      const int i = integer();
      const int j = integer();
      return reversed ? te_ij(i, j) : e_ij(i, j);
    }
    if (at("x")) {
      ++pos;
      const int k = integer();
      if (k < 1) throw std::invalid_argument("polynomial expression: indices start at 1");
      return FreePoly::var(static_cast<std::uint32_t>(k));
    }
    return FreePoly::constant(integer());
  }

  FreePoly product() {
    FreePoly f = factor();
    while (at("*")) {
      ++pos;
      f = f * factor();
    }
    return f;
  }

  FreePoly sum() {
    FreePoly f = product();
    while (at("+") || at("-")) {
      const bool minus = tokens[pos++] == "-";
      if (minus) f -= product();
      else f += product();
    }
    return f;
  }
};

}  // namespace

FreePoly parse_poly_expression(const std::string& text) {
  PolyParser parser(text);
  if (parser.tokens.empty()) throw std::invalid_argument("polynomial expression is empty");
  FreePoly f = parser.sum();
  if (parser.pos != parser.tokens.size())
    throw std::invalid_argument("polynomial expression: trailing input at '" + parser.tokens[parser.pos] + "'");
  return f;
}

}  // namespace ringline
