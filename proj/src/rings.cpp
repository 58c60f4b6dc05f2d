#include "ringline/rings.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

namespace ringline {

namespace {

constexpr std::size_t kMaxCoords = 64;
using CoordBuf = std::array<Elem, kMaxCoords>;

[[noreturn]] void parse_error(std::string_view text, std::size_t pos, const std::string& what) {
  std::ostringstream msg;
  msg << "cannot parse element '" << text << "' at offset " << pos << ": " << what;
  throw RingError(msg.str());
}

void skip_space(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

void expect(std::string_view text, std::size_t& pos, char c) {
  skip_space(text, pos);
  if (pos >= text.size() || text[pos] != c) parse_error(text, pos, std::string("expected '") + c + "'");
  ++pos;
}

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

struct RingImpl {
  virtual ~RingImpl() = default;
  virtual Elem add(Elem a, Elem b) const = 0;
  virtual Elem neg(Elem a) const = 0;
  virtual Elem mul(Elem a, Elem b) const = 0;
  virtual Elem one() const = 0;
  virtual std::string name(Elem a) const = 0;
  virtual Elem parse(std::string_view text, std::size_t& pos) const = 0;
  virtual std::vector<Elem> coords(Elem a) const { return {a}; }
  virtual Elem from_coords(std::span<const Elem> c) const {
    if (c.size() != 1) throw RingError("wrong coordinate count");
    return c[0];
  }
  virtual std::vector<Elem> additive_generators() const = 0;
};

namespace {

struct ZmodImpl final : RingImpl {
  std::uint32_t n;
  explicit ZmodImpl(std::uint32_t modulus) : n(modulus) {}

  Elem add(Elem a, Elem b) const override {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Elem>(s >= n ? s - n : s);
  }
  Elem neg(Elem a) const override { return a == 0 ? 0 : n - a; }
  Elem mul(Elem a, Elem b) const override { return static_cast<Elem>(std::uint64_t{a} * b % n); }
  Elem one() const override { return 1 % n; }
  std::string name(Elem a) const override { return std::to_string(a); }
  Elem parse(std::string_view text, std::size_t& pos) const override {
    skip_space(text, pos);
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      negative = text[pos] == '-';
      ++pos;
    }
    const std::size_t start = pos;
    std::uint64_t value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = (value * 10 + static_cast<std::uint64_t>(text[pos] - '0')) % n;
      ++pos;
    }
    if (pos == start) parse_error(text, pos, "expected integer");
    const Elem v = static_cast<Elem>(value);
    return negative ? neg(v) : v;
  }
  std::vector<Elem> additive_generators() const override { return {1 % n}; }
};

// Elements are tuples of component elements, coordinate 0 least significant.
struct TupleImpl : RingImpl {
  std::vector<const FiniteRing*> comp;
  std::vector<std::uint64_t> weight;
  char open = '(', close = ')';

  void init() {
    if (comp.size() > kMaxCoords) throw RingError("too many coordinates");
    weight.resize(comp.size());
    std::uint64_t w = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      weight[i] = w;
      w *= comp[i]->size();
    }
  }
  std::size_t arity() const { return comp.size(); }

  void decode(Elem a, Elem* out) const {
    std::uint64_t x = a;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const std::uint64_t r = comp[i]->size();
      out[i] = static_cast<Elem>(x % r);
      x /= r;
    }
  }
  Elem encode(const Elem* c) const {
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < comp.size(); ++i) x += c[i] * weight[i];
    return static_cast<Elem>(x);
  }

  Elem add(Elem a, Elem b) const override {
    CoordBuf x, y;
    decode(a, x.data());
    decode(b, y.data());
    for (std::size_t i = 0; i < comp.size(); ++i) x[i] = comp[i]->add(x[i], y[i]);
    return encode(x.data());
  }
  Elem neg(Elem a) const override {
    CoordBuf x;
    decode(a, x.data());
    for (std::size_t i = 0; i < comp.size(); ++i) x[i] = comp[i]->neg(x[i]);
    return encode(x.data());
  }
  std::string name(Elem a) const override {
    CoordBuf x;
    decode(a, x.data());
    std::string out(1, open);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      if (i) out += ',';
      out += comp[i]->name(x[i]);
    }
    out += close;
    return out;
  }
  Elem parse(std::string_view text, std::size_t& pos) const override {
    CoordBuf x;
    expect(text, pos, open);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      if (i) expect(text, pos, ',');
      x[i] = comp[i]->parse_prefix(text, pos);
    }
    expect(text, pos, close);
    return encode(x.data());
  }
  std::vector<Elem> coords(Elem a) const override {
    std::vector<Elem> out(comp.size());
    decode(a, out.data());
    return out;
  }
  Elem from_coords(std::span<const Elem> c) const override {
    if (c.size() != comp.size()) throw RingError("wrong coordinate count");
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] >= comp[i]->size()) throw RingError("coordinate out of range");
    return encode(c.data());
  }
  std::vector<Elem> additive_generators() const override {
    std::vector<Elem> out;
    CoordBuf x{};
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (Elem g : comp[i]->additive_generators()) {
        x[i] = g;
        out.push_back(encode(x.data()));
      }
      x[i] = 0;
    }
    return out;
  }
  Elem unit_coords_one(std::span<const std::size_t> positions) const {
    CoordBuf x{};
    for (std::size_t i : positions) x[i] = comp[i]->one();
    return encode(x.data());
  }
};

// F_p[x]/(x^k + c_{k-1} x^{k-1} + ... + c_0); coordinates are coefficients.
struct GfExtImpl final : TupleImpl {
  std::uint32_t p = 2;
  std::vector<Elem> reduce_by;  // -c_i mod p

  Elem mul(Elem a, Elem b) const override {
    const std::size_t k = arity();
    CoordBuf x, y;
    decode(a, x.data());
    decode(b, y.data());
    std::array<std::uint64_t, 2 * kMaxCoords> prod{};
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p;
    for (std::size_t d = 2 * k - 1; d-- > k;) {
      const std::uint64_t t = prod[d];
      if (t == 0) continue;
      for (std::size_t i = 0; i < k; ++i) prod[d - k + i] = (prod[d - k + i] + t * reduce_by[i]) % p;
      prod[d] = 0;
    }
    CoordBuf out;
    for (std::size_t i = 0; i < k; ++i) out[i] = static_cast<Elem>(prod[i]);
    return encode(out.data());
  }
  Elem one() const override {
    std::array<std::size_t, 1> at{0};
    return unit_coords_one(at);
  }
};

struct MatrixImpl final : TupleImpl {
  std::size_t s = 2;
  const FiniteRing* base = nullptr;

  Elem mul(Elem a, Elem b) const override {
    CoordBuf x, y, z;
    decode(a, x.data());
    decode(b, y.data());
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) {
        Elem acc = 0;
        for (std::size_t l = 0; l < s; ++l) acc = base->add(acc, base->mul(x[i * s + l], y[l * s + j]));
        z[i * s + j] = acc;
      }
    }
    return encode(z.data());
  }
  Elem one() const override {
    std::vector<std::size_t> diag;
    for (std::size_t i = 0; i < s; ++i) diag.push_back(i * s + i);
    return unit_coords_one(diag);
  }
};

struct ProductImpl final : TupleImpl {
  Elem mul(Elem a, Elem b) const override {
    CoordBuf x, y;
    decode(a, x.data());
    decode(b, y.data());
    for (std::size_t i = 0; i < arity(); ++i) x[i] = comp[i]->mul(x[i], y[i]);
    return encode(x.data());
  }
  Elem one() const override {
    std::vector<std::size_t> all(arity());
    std::iota(all.begin(), all.end(), 0);
    return unit_coords_one(all);
  }
};

// D + D^d with (b1 + m1)(b2 + m2) = b1 b2 + b1 m2 + b2 m1 + m1 m2.
struct BmImpl final : TupleImpl {
  const FiniteRing* base = nullptr;
  std::size_t d = 0;
  std::vector<Elem> st;  // st[(i*d + j)*d + k]: coefficient of e_k in e_i e_j

  Elem constant(std::size_t i, std::size_t j, std::size_t k) const { return st[(i * d + j) * d + k]; }

  Elem mul(Elem a, Elem b) const override {
    CoordBuf x, y, z;
    decode(a, x.data());
    decode(b, y.data());
    const FiniteRing& D = *base;
    z[0] = D.mul(x[0], y[0]);
    for (std::size_t k = 0; k < d; ++k) z[k + 1] = D.add(D.mul(x[0], y[k + 1]), D.mul(y[0], x[k + 1]));
    for (std::size_t i = 0; i < d; ++i) {
      if (x[i + 1] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (y[j + 1] == 0) continue;
        const Elem coeff = D.mul(x[i + 1], y[j + 1]);
        for (std::size_t k = 0; k < d; ++k) {
          const Elem c = constant(i, j, k);
          if (c != 0) z[k + 1] = D.add(z[k + 1], D.mul(coeff, c));
        }
      }
    }
    return encode(z.data());
  }
  Elem one() const override {
    std::array<std::size_t, 1> at{0};
    return unit_coords_one(at);
  }
};

struct SubringImpl final : RingImpl {
  RingPtr parent;
  std::vector<Elem> elements;
  std::unordered_map<Elem, Elem> index;

  Elem lift(Elem a) const { return elements[a]; }
  Elem lower(Elem x) const {
    const auto it = index.find(x);
    if (it == index.end()) throw RingError("element outside subring");
    return it->second;
  }
  Elem add(Elem a, Elem b) const override { return lower(parent->add(lift(a), lift(b))); }
  Elem neg(Elem a) const override { return lower(parent->neg(lift(a))); }
  Elem mul(Elem a, Elem b) const override { return lower(parent->mul(lift(a), lift(b))); }
  Elem one() const override { return lower(parent->one()); }
  std::string name(Elem a) const override { return parent->name(lift(a)); }
  Elem parse(std::string_view text, std::size_t& pos) const override {
    const std::size_t start = pos;
    const Elem x = parent->parse_prefix(text, pos);
    const auto it = index.find(x);
    if (it == index.end()) parse_error(text, start, "element outside subring");
    return it->second;
  }
  std::vector<Elem> coords(Elem a) const override { return {lift(a)}; }
  Elem from_coords(std::span<const Elem> c) const override {
    if (c.size() != 1) throw RingError("wrong coordinate count");
    return lower(c[0]);
  }
  std::vector<Elem> additive_generators() const override {
    // A generating set of the additive subgroup, chosen greedily.
    std::vector<Elem> gens;
    std::vector<char> reached(elements.size(), 0);
    std::vector<Elem> span{0};
    reached[0] = 1;
    for (Elem g = 1; g < elements.size(); ++g) {
      if (reached[g]) continue;
      gens.push_back(g);
      for (std::size_t i = 0; i < span.size(); ++i) {
        for (Elem h : gens) {
          const Elem s = add(span[i], h);
          if (!reached[s]) {
            reached[s] = 1;
            span.push_back(s);
          }
        }
      }
    }
    return gens;
  }
};

std::string join_specs(const std::vector<RingSpec>& specs) {
  std::string out;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (i) out += ',';
    out += specs[i].describe();
  }
  return out;
}

}  // namespace

RingSpec RingSpec::zmod(std::uint32_t n) {
  RingSpec s;
  s.kind = Kind::zmod;
  s.modulus_n = n;
  return s;
}

RingSpec RingSpec::gf(std::uint32_t p) {
  RingSpec s;
  s.kind = Kind::gf;
  s.modulus_n = p;
  s.degree = 1;
  return s;
}

RingSpec RingSpec::gf(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus) {
  RingSpec s = gf(p);
  s.degree = k;
  s.modulus = std::move(modulus);
  return s;
}

RingSpec RingSpec::matrix(RingSpec base, std::uint32_t size) {
  RingSpec s;
  s.kind = Kind::matrix;
  s.children = {std::move(base)};
  s.matrix_size = size;
  return s;
}

RingSpec RingSpec::product(std::vector<RingSpec> factors) {
  RingSpec s;
  s.kind = Kind::product;
  s.children = std::move(factors);
  return s;
}

RingSpec RingSpec::bm(RingSpec base, std::uint32_t mdim, std::vector<Product> table) {
  RingSpec s;
  s.kind = Kind::bm;
  s.children = {std::move(base)};
  s.module_dim = mdim;
  s.table = std::move(table);
  return s;
}

RingSpec RingSpec::exterior(RingSpec base) { return bm(std::move(base), 3, {{1, 2, 3, 1}, {2, 1, 3, -1}}); }

std::string RingSpec::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::zmod:
      out << "zmod(" << modulus_n << ")";
      break;
    case Kind::gf:
      out << "gf(" << modulus_n;
      if (degree > 1) {
        out << ',' << degree << ",[";
        for (std::size_t i = 0; i < modulus.size(); ++i) out << (i ? "," : "") << modulus[i];
        out << ']';
      }
      out << ')';
      break;
    case Kind::matrix:
      out << "matrix(" << join_specs(children) << ',' << matrix_size << ')';
      break;
    case Kind::product:
      out << "product(" << join_specs(children) << ')';
      break;
    case Kind::bm:
      out << "bm(" << join_specs(children) << ',' << module_dim << ",[";
      for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& t = table[i];
        out << (i ? "," : "") << '(' << t.i << ',' << t.j << ',' << t.k << ',' << t.coeff << ')';
      }
      out << "])";
      break;
  }
  return out.str();
}

FiniteRing::FiniteRing() = default;
FiniteRing::~FiniteRing() = default;

Elem FiniteRing::add_slow(Elem a, Elem b) const { return impl_->add(a, b); }
Elem FiniteRing::mul_slow(Elem a, Elem b) const { return impl_->mul(a, b); }
Elem FiniteRing::neg_slow(Elem a) const { return impl_->neg(a); }

void FiniteRing::finish() {
  one_ = impl_->one();
  additive_generators_ = impl_->additive_generators();
  if (size_ <= kTableLimit) {
    const std::size_t n = size_;
    add_table_.resize(n * n);
    mul_table_.resize(n * n);
    neg_table_.resize(n);
    for (Elem a = 0; a < n; ++a) {
      neg_table_[a] = impl_->neg(a);
      for (Elem b = 0; b < n; ++b) {
        add_table_[a * n + b] = impl_->add(a, b);
        mul_table_[a * n + b] = impl_->mul(a, b);
      }
    }
  }
  integer_multiples_.assign(1, 0);
  for (Elem x = one_; x != 0; x = add(x, one_)) {
    integer_multiples_.push_back(x);
    if (integer_multiples_.size() > size_) throw RingError("additive order of 1 exceeds ring size");
  }
  characteristic_ = static_cast<std::uint32_t>(integer_multiples_.size());

  commutative_ = true;
  for (Elem g : additive_generators_)
    for (Elem h : additive_generators_)
      if (mul(g, h) != mul(h, g)) commutative_ = false;

  central_.assign(size_, 0);
  for (Elem a = 0; a < size_; ++a) {
    bool central = true;
    for (Elem g : additive_generators_) {
      if (mul(a, g) != mul(g, a)) {
        central = false;
        break;
      }
    }
    if (central) {
      central_[a] = 1;
      centre_.push_back(a);
    }
  }

  if (size_ <= kStructureLimit) {
    inverse_.assign(size_, -1);
    for (Elem a = 1; a < size_; ++a) {
      if (inverse_[a] >= 0) continue;
      for (Elem b = 1; b < size_; ++b) {
        if (mul(a, b) == one_ && mul(b, a) == one_) {
          inverse_[a] = b;
          inverse_[b] = a;
          break;
        }
      }
    }
    if (size_ == 1) inverse_[0] = 0;
    for (Elem a = 0; a < size_; ++a)
      if (inverse_[a] >= 0) units_.push_back(a);
  }
}

Elem FiniteRing::from_integer(Coeff c) const {
  const auto m = static_cast<Coeff>(characteristic_);
  const Coeff r = ((c % m) + m) % m;
  return integer_multiples_[static_cast<std::size_t>(r)];
}

bool FiniteRing::is_unit(Elem a) const { return try_inverse(a).has_value(); }

std::optional<Elem> FiniteRing::try_inverse(Elem a) const {
  if (has_structure()) {
    if (inverse_[a] < 0) return std::nullopt;
    return static_cast<Elem>(inverse_[a]);
  }
  for (Elem b = 0; b < size_; ++b)
    if (mul(a, b) == one_ && mul(b, a) == one_) return b;
  return std::nullopt;
}

Elem FiniteRing::inverse(Elem a) const {
  if (auto inv = try_inverse(a)) return *inv;
  throw RingError("inverse of non-unit " + name(a) + " in " + description_);
}

std::span<const Elem> FiniteRing::units() const {
  if (!has_structure()) throw RingError("unit group not enumerated for " + description_);
  return units_;
}

std::span<const Elem> FiniteRing::centre() const { return centre_; }

bool FiniteRing::is_central(Elem a) const { return central_[a] != 0; }

std::string FiniteRing::name(Elem a) const { return impl_->name(a); }

Elem FiniteRing::parse_prefix(std::string_view text, std::size_t& pos) const { return impl_->parse(text, pos); }

Elem FiniteRing::parse(std::string_view text) const {
  std::size_t pos = 0;
  const Elem a = impl_->parse(text, pos);
  skip_space(text, pos);
  if (pos != text.size()) parse_error(text, pos, "trailing characters");
  return a;
}

std::vector<Elem> FiniteRing::coords(Elem a) const { return impl_->coords(a); }

Elem FiniteRing::from_coords(std::span<const Elem> c) const { return impl_->from_coords(c); }

Elem FiniteRing::to_parent(Elem a) const {
  if (kind_ != Kind::subring) throw RingError("not a subring");
  return static_cast<const SubringImpl&>(*impl_).lift(a);
}

std::optional<Elem> FiniteRing::from_parent(Elem parent_elem) const {
  if (kind_ != Kind::subring) throw RingError("not a subring");
  const auto& sub = static_cast<const SubringImpl&>(*impl_);
  const auto it = sub.index.find(parent_elem);
  if (it == sub.index.end()) return std::nullopt;
  return it->second;
}

CheckResult FiniteRing::check_axioms(std::uint64_t seed) const {
  CheckResult r;
  r.name = "ring-axioms/" + description_;
  r.anchor = "associative ring with unit element";
  const auto triple = [&](Elem a, Elem b, Elem c) {
    ++r.cases;
    if (!r.pass) return;
    const auto where = [&] { return "(" + name(a) + ", " + name(b) + ", " + name(c) + ")"; };
    if (add(add(a, b), c) != add(a, add(b, c))) r.fail("additive associativity at " + where());
    else if (add(a, b) != add(b, a)) r.fail("additive commutativity at " + where());
    else if (mul(mul(a, b), c) != mul(a, mul(b, c))) r.fail("multiplicative associativity at " + where());
    else if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) r.fail("left distributivity at " + where());
    else if (mul(add(a, b), c) != add(mul(a, c), mul(b, c))) r.fail("right distributivity at " + where());
  };
  for (Elem a = 0; a < size_ && r.pass; ++a) {
    if (add(a, 0) != a || add(a, neg(a)) != 0) r.fail("additive identity or inverse at " + name(a));
    else if (mul(one_, a) != a || mul(a, one_) != a) r.fail("unit element at " + name(a));
  }
  if (size_ <= kTableLimit) {
    for (Elem a = 0; a < size_; ++a)
      for (Elem b = 0; b < size_; ++b)
        for (Elem c = 0; c < size_; ++c) triple(a, b, c);
  } else {
    r.mode = Mode::sampled;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(size_ - 1));
    for (int i = 0; i < 20000; ++i) {
      const Elem a = pick(rng), b = pick(rng), c = pick(rng);
      triple(a, b, c);
    }
  }
  return r;
}

RingPtr build_ring(const RingSpec& spec) {
  std::shared_ptr<FiniteRing> ring(new FiniteRing());
  ring->spec_ = spec;
  ring->description_ = spec.describe();
  std::uint64_t size = 0;

  const auto check_cap = [&](std::uint64_t n) {
    if (n > spec.cap) {
      std::ostringstream msg;
      msg << "size cap exceeded: " << spec.describe() << " has " << n << " elements, cap " << spec.cap;
      throw RingError(msg.str());
    }
  };
  const auto capped_product = [&](const std::vector<const FiniteRing*>& comps) {
    std::uint64_t n = 1;
    for (const FiniteRing* c : comps) {
      n *= c->size();
      if (n > spec.cap || n > 0xffffffffULL) check_cap(std::max<std::uint64_t>(n, spec.cap + 1));
    }
    return n;
  };

  switch (spec.kind) {
    case RingSpec::Kind::zmod: {
      if (spec.modulus_n < 2) throw RingError("zmod needs n >= 2");
      check_cap(spec.modulus_n);
      ring->kind_ = FiniteRing::Kind::zmod;
      ring->impl_ = std::make_unique<ZmodImpl>(spec.modulus_n);
      size = spec.modulus_n;
      break;
    }
    case RingSpec::Kind::gf: {
      if (!is_prime(spec.modulus_n)) throw RingError("gf order " + std::to_string(spec.modulus_n) + " is not prime");
      if (spec.degree <= 1) {
        check_cap(spec.modulus_n);
        ring->kind_ = FiniteRing::Kind::gf_prime;
        ring->impl_ = std::make_unique<ZmodImpl>(spec.modulus_n);
        size = spec.modulus_n;
        break;
      }
      std::vector<std::uint32_t> c = spec.modulus;
      if (c.size() == spec.degree + 1 && c.back() == 1) c.pop_back();
      if (c.size() != spec.degree) throw RingError("invalid modulus polynomial: expected " + std::to_string(spec.degree) + " coefficients");
      for (auto v : c)
        if (v >= spec.modulus_n) throw RingError("invalid modulus polynomial: coefficient out of range");
      if (spec.degree > kMaxCoords / 2) throw RingError("extension degree too large");
      RingPtr prime = build_ring(RingSpec::gf(spec.modulus_n));
      ring->components_ = {prime};
      auto impl = std::make_unique<GfExtImpl>();
      impl->p = spec.modulus_n;
      impl->comp.assign(spec.degree, prime.get());
      for (auto v : c) impl->reduce_by.push_back(v == 0 ? 0 : spec.modulus_n - v);
      size = capped_product(impl->comp);
      check_cap(size);
      impl->init();
      ring->kind_ = FiniteRing::Kind::gf_ext;
      ring->impl_ = std::move(impl);
      break;
    }
    case RingSpec::Kind::matrix: {
      if (spec.children.size() != 1) throw RingError("matrix ring needs one base ring");
      if (spec.matrix_size < 1 || spec.matrix_size * spec.matrix_size > kMaxCoords)
        throw RingError("unsupported matrix size");
      RingPtr base = build_ring(spec.children[0].with_cap(std::max(spec.children[0].cap, spec.cap)));
      ring->components_ = {base};
      auto impl = std::make_unique<MatrixImpl>();
      impl->s = spec.matrix_size;
      impl->base = base.get();
      impl->comp.assign(std::size_t{spec.matrix_size} * spec.matrix_size, base.get());
      size = capped_product(impl->comp);
      check_cap(size);
      impl->init();
      impl->open = '[';
      impl->close = ']';
      ring->kind_ = FiniteRing::Kind::matrix;
      ring->matrix_size_ = spec.matrix_size;
      ring->impl_ = std::move(impl);
      break;
    }
    case RingSpec::Kind::product: {
      if (spec.children.empty()) throw RingError("product needs at least one factor");
      auto impl = std::make_unique<ProductImpl>();
      for (const auto& child : spec.children) {
        ring->components_.push_back(build_ring(child));
        impl->comp.push_back(ring->components_.back().get());
      }
      size = capped_product(impl->comp);
      check_cap(size);
      impl->init();
      ring->kind_ = FiniteRing::Kind::product;
      ring->impl_ = std::move(impl);
      break;
    }
    case RingSpec::Kind::bm: {
      if (spec.children.size() != 1) throw RingError("bm ring needs one base ring");
      const std::size_t d = spec.module_dim;
      if (d < 1 || d + 1 > kMaxCoords) throw RingError("unsupported module dimension");
      RingPtr base = build_ring(spec.children[0]);
      if (!base->is_commutative()) throw RingError("bm base ring must be commutative");
      const FiniteRing& D = *base;
      ring->components_ = {base};
      auto impl = std::make_unique<BmImpl>();
      impl->base = base.get();
      impl->d = d;
      impl->st.assign(d * d * d, 0);
      for (const auto& t : spec.table) {
        if (t.i < 1 || t.j < 1 || t.k < 1 || t.i > d || t.j > d || t.k > d)
          throw RingError("bm table index out of range");
        Elem& slot = impl->st[((t.i - 1) * d + (t.j - 1)) * d + (t.k - 1)];
        slot = D.add(slot, D.from_integer(t.coeff));
      }
      const auto cst = [&](std::size_t i, std::size_t j, std::size_t k) { return impl->st[(i * d + j) * d + k]; };
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
          if (cst(i, i, k) != 0)
            throw RingError("non-alternating bm table: e_" + std::to_string(i + 1) + "^2 != 0");
          for (std::size_t j = 0; j < d; ++j) {
            if (cst(i, j, k) != D.neg(cst(j, i, k)))
              throw RingError("non-alternating bm table: e_" + std::to_string(i + 1) + " e_" + std::to_string(j + 1) +
                              " != -e_" + std::to_string(j + 1) + " e_" + std::to_string(i + 1));
          }
        }
      }
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t k = 0; k < d; ++k)
            for (std::size_t m = 0; m < d; ++m) {
              Elem lhs = 0, rhs = 0;
              for (std::size_t l = 0; l < d; ++l) {
                lhs = D.add(lhs, D.mul(cst(i, j, l), cst(l, k, m)));
                rhs = D.add(rhs, D.mul(cst(j, k, l), cst(i, l, m)));
              }
              if (lhs != rhs)
                throw RingError("non-associative bm table at (e_" + std::to_string(i + 1) + ", e_" +
                                std::to_string(j + 1) + ", e_" + std::to_string(k + 1) + ")");
            }
      impl->comp.assign(d + 1, base.get());
      size = capped_product(impl->comp);
      check_cap(size);
      impl->init();
      ring->kind_ = FiniteRing::Kind::bm;
      ring->module_dim_ = spec.module_dim;
      ring->impl_ = std::move(impl);
      break;
    }
  }
  ring->size_ = static_cast<std::size_t>(size);
  ring->finish();

  if (ring->kind_ == FiniteRing::Kind::gf_ext) {
    bool field = true;
    if (ring->has_structure()) {
      field = ring->units_.size() + 1 == ring->size_;
    } else {
      for (Elem a = 1; a < ring->size_ && field; ++a)
        for (Elem b = 1; b < ring->size_ && field; ++b)
          if (ring->mul(a, b) == 0) field = false;
    }
    if (!field) throw RingError("invalid modulus polynomial: " + spec.describe() + " is not a field");
  }
  const CheckResult axioms = ring->check_axioms(0);
  if (!axioms.pass) throw RingError("ring axioms fail for " + spec.describe() + ": " + axioms.witness);
  return ring;
}

SubringClosure subring_closure(const FiniteRing& ring, std::span<const Elem> generators) {
  SubringClosure out;
  std::vector<char> in_input(ring.size(), 0), in_closure(ring.size(), 0);
  std::vector<Elem> input;
  for (Elem g : generators) {
    if (g >= ring.size()) throw RingError("element outside ring");
    if (!in_input[g]) {
      in_input[g] = 1;
      input.push_back(g);
    }
  }
  std::sort(input.begin(), input.end());

  std::vector<Elem> list;
  const auto push = [&](Elem x) {
    if (!in_closure[x]) {
      in_closure[x] = 1;
      list.push_back(x);
    }
  };
  push(ring.zero());
  push(ring.one());
  for (Elem g : input) push(g);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Elem x = list[i];
    push(ring.neg(x));
    for (std::size_t j = 0; j <= i; ++j) {
      const Elem y = list[j];
      push(ring.add(x, y));
      push(ring.mul(x, y));
      push(ring.mul(y, x));
    }
  }
  std::sort(list.begin(), list.end());
  out.elements = list;
  out.closed = list.size() == input.size();
  if (!out.closed) {
    for (Elem x : list) {
      if (!in_input[x]) {
        out.witness = x;
        break;
      }
    }
    for (Elem a : input) {
      for (Elem b : input) {
        if (!in_input[ring.mul(a, b)]) {
          out.product_witness = std::array<Elem, 2>{a, b};
          break;
        }
      }
      if (out.product_witness) break;
    }
    if (!out.product_witness) {
      for (Elem a : input) {
        for (Elem b : input) {
          if (!in_input[ring.add(a, b)]) {
            out.product_witness = std::array<Elem, 2>{a, b};
            out.witness_is_sum = true;
            break;
          }
        }
        if (out.product_witness) break;
      }
    }
  }
  return out;
}

RingPtr make_subring(const RingPtr& parent, std::vector<Elem> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  const SubringClosure closure = subring_closure(*parent, elements);
  if (!closure.closed) throw RingError("subset is not a subring of " + parent->description());
  std::shared_ptr<FiniteRing> ring(new FiniteRing());
  auto impl = std::make_unique<SubringImpl>();
  impl->parent = parent;
  impl->elements = elements;
  for (Elem i = 0; i < elements.size(); ++i) impl->index.emplace(elements[i], i);
  std::string desc = "subring of " + parent->description() + " {";
  for (std::size_t i = 0; i < elements.size(); ++i) desc += (i ? "," : "") + parent->name(elements[i]);
  desc += "}";
  ring->description_ = desc;
  ring->kind_ = FiniteRing::Kind::subring;
  ring->components_ = {parent};
  ring->size_ = elements.size();
  ring->impl_ = std::move(impl);
  ring->finish();
  return ring;
}

RegularRepresentation regular_representation(const RingPtr& ring) {
  if (ring->kind() != FiniteRing::Kind::bm || ring->module_dim() != 3 || !ring->spec())
    throw RingError("regular representation needs a bm ring with module dimension 3");
  const RingSpec& base_spec = ring->spec()->children[0];
  const std::size_t dsize = ring->components()[0]->size();
  std::size_t cap = 1;
  for (int i = 0; i < 16; ++i) {
    cap *= dsize;
    if (cap > (std::size_t{1} << 20)) throw RingError("regular representation codomain too large");
  }
  RegularRepresentation out;
  out.codomain = build_ring(RingSpec::matrix(base_spec, 4).with_cap(std::max(cap, kDefaultSizeCap)));
  const FiniteRing& R = *ring;
  std::array<Elem, 4> basis{};
  for (std::size_t i = 0; i < 4; ++i) {
    std::array<Elem, 4> c{};
    c[i] = R.components()[0]->one();
    basis[i] = R.from_coords(c);
  }
  out.values.resize(R.size());
  for (Elem a = 0; a < R.size(); ++a) {
    std::array<Elem, 16> entries{};
    for (std::size_t i = 0; i < 4; ++i) {
      const auto row = R.coords(R.mul(basis[i], a));
      for (std::size_t j = 0; j < 4; ++j) entries[i * 4 + j] = row[j];
    }
    out.values[a] = out.codomain->from_coords(entries);
  }
  return out;
}

}  // namespace ringline
