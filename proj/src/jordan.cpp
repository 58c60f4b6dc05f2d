#include "ringline/jordan.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace ringline {

MapSpec MapSpec::identity() { return {}; }

MapSpec MapSpec::from_table(std::vector<std::pair<std::string, std::string>> entries) {
  MapSpec s;
  s.kind = Kind::table;
  s.table = std::move(entries);
  return s;
}

MapSpec MapSpec::product(std::vector<MapSpec> factors) {
  MapSpec s;
  s.kind = Kind::product;
  s.parts = std::move(factors);
  return s;
}

MapSpec MapSpec::herzer(std::vector<std::vector<std::string>> rows) {
  MapSpec s;
  s.kind = Kind::herzer;
  s.alpha2 = std::move(rows);
  return s;
}

MapSpec MapSpec::compose(MapSpec inner, MapSpec outer, std::optional<RingSpec> middle) {
  MapSpec s;
  s.kind = Kind::compose;
  s.parts = {std::move(inner), std::move(outer)};
  s.middle = std::move(middle);
  return s;
}

MapSpec MapSpec::transpose() {
  MapSpec s;
  s.kind = Kind::transpose;
  return s;
}

MapSpec MapSpec::regular_rep() {
  MapSpec s;
  s.kind = Kind::regular_rep;
  return s;
}

std::string MapSpec::describe() const {
  switch (kind) {
    case Kind::identity:
      return "identity";
    case Kind::table:
      return "table(" + std::to_string(table.size()) + " entries)";
    case Kind::product: {
      std::string out = "product(";
      for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i].describe();
      return out + ")";
    }
    case Kind::herzer: {
      std::string out = "herzer([";
      for (std::size_t i = 0; i < alpha2.size(); ++i) {
        out += i ? ",[" : "[";
        for (std::size_t j = 0; j < alpha2[i].size(); ++j) out += (j ? "," : "") + alpha2[i][j];
        out += "]";
      }
      return out + "])";
    }
    case Kind::compose:
      return "compose(" + parts[0].describe() + "," + parts[1].describe() + ")";
    case Kind::transpose:
      return "transpose";
    case Kind::regular_rep:
      return "regular_rep";
  }
  return "?";
}

namespace {

std::vector<Elem> map_values(const MapSpec& spec, const RingPtr& R, const RingPtr& Rp) {
  const std::size_t n = R->size();
  std::vector<Elem> values(n);
  switch (spec.kind) {
    case MapSpec::Kind::identity: {
      if (R->description() != Rp->description())
        throw JordanError("identity map needs equal domain and codomain");
      for (Elem a = 0; a < n; ++a) values[a] = a;
      break;
    }
    case MapSpec::Kind::table: {
      std::vector<char> seen(n, 0);
      for (const auto& [from, to] : spec.table) {
        const Elem a = R->parse(from);
        const Elem b = Rp->parse(to);
        if (seen[a] && values[a] != b) throw JordanError("table assigns two images to " + R->name(a));
        seen[a] = 1;
        values[a] = b;
      }
      for (Elem a = 0; a < n; ++a)
        if (!seen[a]) throw JordanError("table has no image for " + R->name(a));
      break;
    }
    case MapSpec::Kind::product: {
      if (R->kind() != FiniteRing::Kind::product || Rp->kind() != FiniteRing::Kind::product)
        throw JordanError("product map needs product rings");
      const auto f = R->components();
      const auto g = Rp->components();
      if (f.size() != spec.parts.size() || g.size() != spec.parts.size())
        throw JordanError("product map needs one part per factor");
      std::vector<std::vector<Elem>> part_values;
      for (std::size_t i = 0; i < f.size(); ++i) part_values.push_back(map_values(spec.parts[i], f[i], g[i]));
      for (Elem a = 0; a < n; ++a) {
        auto c = R->coords(a);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = part_values[i][c[i]];
        values[a] = Rp->from_coords(c);
      }
      break;
    }
    case MapSpec::Kind::herzer: {
      if (R->kind() != FiniteRing::Kind::bm || Rp->kind() != FiniteRing::Kind::bm)
        throw JordanError("herzer map needs bm rings");
      const FiniteRing& D = *R->components()[0];
      if (D.description() != Rp->components()[0]->description())
        throw JordanError("herzer map needs a common base ring");
      const std::size_t d = R->module_dim(), dp = Rp->module_dim();
      if (spec.alpha2.size() != d) throw JordanError("herzer map needs one row per basis vector");
      std::vector<std::vector<Elem>> rows;
      for (const auto& row : spec.alpha2) {
        if (row.size() != dp) throw JordanError("herzer row has wrong length");
        std::vector<Elem> r;
        for (const auto& name : row) r.push_back(D.parse(name));
        rows.push_back(std::move(r));
      }
      for (Elem a = 0; a < n; ++a) {
        const auto c = R->coords(a);
        std::vector<Elem> out(dp + 1, 0);
        out[0] = c[0];
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < dp; ++j) out[j + 1] = D.add(out[j + 1], D.mul(c[i + 1], rows[i][j]));
        values[a] = Rp->from_coords(out);
      }
      break;
    }
    case MapSpec::Kind::compose: {
      if (spec.parts.size() != 2) throw JordanError("compose needs inner and outer maps");
      const RingPtr mid = spec.middle ? build_ring(*spec.middle) : R;
      const auto inner = map_values(spec.parts[0], R, mid);
      const auto outer = map_values(spec.parts[1], mid, Rp);
      for (Elem a = 0; a < n; ++a) values[a] = outer[inner[a]];
      break;
    }
    case MapSpec::Kind::transpose: {
      if (R->kind() != FiniteRing::Kind::matrix || R->description() != Rp->description())
        throw JordanError("transpose needs a matrix ring mapped to itself");
      const std::size_t s = R->matrix_size();
      for (Elem a = 0; a < n; ++a) {
        const auto c = R->coords(a);
        std::vector<Elem> t(c.size());
        for (std::size_t i = 0; i < s; ++i)
          for (std::size_t j = 0; j < s; ++j) t[j * s + i] = c[i * s + j];
        values[a] = Rp->from_coords(t);
      }
      break;
    }
    case MapSpec::Kind::regular_rep: {
      const RegularRepresentation rep = regular_representation(R);
      if (rep.codomain->description() != Rp->description())
        throw JordanError("regular representation lands in " + rep.codomain->description());
      values = rep.values;
      break;
    }
  }
  return values;
}

std::string pair_text(const FiniteRing& R, Elem a, Elem b) { return "(" + R.name(a) + ", " + R.name(b) + ")"; }

}  // namespace

JordanMap make_jordan_map(const RingPtr& domain, const RingPtr& codomain, std::vector<Elem> values,
                          std::string label) {
  const FiniteRing& R = *domain;
  const FiniteRing& Rp = *codomain;
  if (values.size() != R.size()) throw JordanError("value table has wrong size");
  for (Elem v : values)
    if (v >= Rp.size()) throw JordanError("value outside codomain");
  JordanMap m;
  m.domain = domain;
  m.codomain = codomain;
  m.values = std::move(values);
  m.label = std::move(label);
  const auto& f = m.values;
  const std::size_t n = R.size();

  m.unital = f[R.one()] == Rp.one();
  if (!m.unital) throw JordanError(m.label + ": not unital, 1 maps to " + Rp.name(f[R.one()]));
  m.additive = true;
  for (Elem a = 0; a < n && m.additive; ++a)
    for (Elem b = 0; b < n; ++b)
      if (f[R.add(a, b)] != Rp.add(f[a], f[b])) {
        m.additive = false;
        throw JordanError(m.label + ": not additive at " + pair_text(R, a, b));
      }
  m.jordan = true;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (f[R.mul(R.mul(a, b), a)] != Rp.mul(Rp.mul(f[a], f[b]), f[a])) {
        m.jordan = false;
        throw JordanError(m.label + ": Jordan law fails at " + pair_text(R, a, b));
      }
  m.homomorphism = m.antihomomorphism = true;
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      const Elem ab = f[R.mul(a, b)];
      if (m.homomorphism && ab != Rp.mul(f[a], f[b])) {
        m.homomorphism = false;
        m.not_homo_witness = std::array<Elem, 2>{a, b};
      }
      if (m.antihomomorphism && ab != Rp.mul(f[b], f[a])) {
        m.antihomomorphism = false;
        m.not_anti_witness = std::array<Elem, 2>{a, b};
      }
    }
  }
  std::vector<Elem> image(f.begin(), f.end());
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  m.image_closure = subring_closure(Rp, image);
  m.image_ring = make_subring(codomain, m.image_closure.elements);
  return m;
}

JordanMap build_map(const MapSpec& spec, const RingPtr& domain, const RingPtr& codomain) {
  return make_jordan_map(domain, codomain, map_values(spec, domain, codomain), spec.describe());
}

std::string JordanMap::classification() const {
  const auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::ostringstream out;
  out << "map:             " << label << '\n';
  out << "domain:          " << domain->description() << '\n';
  out << "codomain:        " << codomain->description() << '\n';
  out << "additive:        " << yn(additive) << '\n';
  out << "unital:          " << yn(unital) << '\n';
  out << "jordan:          " << yn(jordan) << '\n';
  out << "homomorphism:    " << yn(homomorphism);
  if (not_homo_witness)
    out << "  (witness " << pair_text(*domain, (*not_homo_witness)[0], (*not_homo_witness)[1]) << ")";
  out << '\n';
  out << "antihomomorphism: " << yn(antihomomorphism);
  if (not_anti_witness)
    out << "  (witness " << pair_text(*domain, (*not_anti_witness)[0], (*not_anti_witness)[1]) << ")";
  out << '\n';
  out << "proper:          " << yn(proper()) << '\n';
  out << "image-closed:    " << yn(image_closure.closed);
  if (image_closure.witness) out << "  (closure adds " << codomain->name(*image_closure.witness) << ")";
  out << '\n';
  out << "image subring:   " << image_closure.elements.size() << " elements\n";
  return out.str();
}

ParamSeq apply_seq(const JordanMap& alpha, std::span<const Elem> T) {
  ParamSeq out;
  out.reserve(T.size());
  for (Elem t : T) out.push_back(alpha(t));
  return out;
}

CheckResult verify_unit_behavior(const JordanMap& alpha) {
  const FiniteRing& R = *alpha.domain;
  const FiniteRing& Rp = *alpha.codomain;
  CheckResult r{"jordan/unit-behavior/" + alpha.label + "/" + R.description(), "(a^{-1})^α = (a^α)^{-1}"};
  for (Elem a : R.units()) {
    ++r.cases;
    const Elem inv = R.inverse(a);
    const auto image_inv = Rp.try_inverse(alpha(a));
    if (!image_inv) {
      r.fail("image of unit " + R.name(a) + " is not a unit");
      break;
    }
    if (*image_inv != alpha(inv)) {
      r.fail("(a^{-1})^α != (a^α)^{-1} at a = " + R.name(a));
      break;
    }
  }
  return r;
}

CheckResult test_j_polynomial(const std::vector<const FreePoly*>& factors, const std::string& fname,
                              const JordanMap& alpha, std::size_t max_len, const SweepBudget& budget) {
  const FiniteRing& R = *alpha.domain;
  const FiniteRing& Rp = *alpha.codomain;
  const auto s = sweep_words(R.size(), max_len, budget, [&](std::span<const Elem> T) {
    Elem lhs = R.one();
    for (const FreePoly* f : factors) lhs = R.mul(lhs, evaluate<FiniteRing, Elem>(*f, R, T));
    const ParamSeq image = apply_seq(alpha, T);
    const std::span<const Elem> Ta(image);
    Elem rhs = Rp.one();
    for (const FreePoly* f : factors) rhs = Rp.mul(rhs, evaluate<FiniteRing, Elem>(*f, Rp, Ta));
    return alpha(lhs) == rhs;
  });
  CheckResult r{"jordan/j-polynomial/" + fname + "/" + alpha.label + "/" + R.description(), "f(T)^α = f(T^α)"};
  r.mode = s.mode;
  r.cases = s.cases;
  if (s.first_failure) r.fail("f(T)^α != f(T^α) at T = " + to_string(R, *s.first_failure));
  return r;
}

std::vector<CheckResult> test_thm_inv0(const JordanMap& alpha, std::size_t max_len, const SweepBudget& budget) {
  const FiniteRing& R = *alpha.domain;
  const FiniteRing& Rp = *alpha.codomain;
  // First rows of E(T) and E(T^α) are (e_1^n, e_1^{n-1}) at T and T^α.
  const auto sa = sweep_words(R.size(), max_len, budget, [&](std::span<const Elem> T) {
    const Mat2 m = E_word(R, T);
    if (!R.is_unit(m.a)) return true;
    return Rp.is_unit(E_word(Rp, apply_seq(alpha, T)).a);
  });
  const auto sb = sweep_words(R.size(), max_len, budget, [&](std::span<const Elem> T) {
    const Mat2 m = E_word(R, T);
    if (!R.is_unit(m.a) || m.b != 0) return true;
    const Mat2 mp = E_word(Rp, apply_seq(alpha, T));
    return Rp.is_unit(mp.a) && mp.b == 0;
  });
  const std::string suffix = "/" + alpha.label + "/" + R.description();
  CheckResult a{"thm35/unit-entry" + suffix, "e_1^n(T) in R* implies e_1^n(T^α) in R'*"};
  a.mode = sa.mode;
  a.cases = sa.cases;
  if (sa.first_failure) a.fail("e_1^n(T^α) not a unit at T = " + to_string(R, *sa.first_failure));
  CheckResult b{"thm35/zero-entry" + suffix, "e_1^n(T) in R* and e_1^{n-1}(T) = 0 imply e_1^{n-1}(T^α) = 0'"};
  b.mode = sb.mode;
  b.cases = sb.cases;
  if (sb.first_failure) b.fail("e_1^{n-1}(T^α) != 0 at T = " + to_string(R, *sb.first_failure));
  return {a, b};
}

CheckResult check_centre_transfer(const JordanMap& alpha, std::size_t max_len) {
  const FiniteRing& R = *alpha.domain;
  const FiniteRing& Rp = *alpha.codomain;
  const FiniteRing& Rpp = *alpha.image_ring;
  CheckResult r{"jordan/centre-transfer/" + alpha.label + "/" + R.description(), "E(T) in H implies E(T^α) in H''"};
  for_each_scalar_word(R, max_len, [&](std::span<const Elem> T, Elem) {
    ++r.cases;
    if (!r.pass) return;
    const Mat2 m = E_word(Rp, apply_seq(alpha, T));
    bool ok = m.b == 0 && m.c == 0 && m.a == m.d;
    if (ok) {
      const auto a = Rpp.from_parent(m.a);
      ok = a && Rpp.is_central(*a) && Rpp.is_unit(*a);
    }
    if (!ok) r.fail("E(T^α) = " + to_string(Rp, m) + " not in H'' for T = " + to_string(R, T));
  });
  return r;
}

CheckResult check_apply_seq_hat(const JordanMap& alpha, std::size_t max_len, const SweepBudget& budget) {
  const FiniteRing& R = *alpha.domain;
  const FiniteRing& Rp = *alpha.codomain;
  const auto s = sweep_words(R.size(), max_len, budget, [&](std::span<const Elem> T) {
    return apply_seq(alpha, word_inverse(R, T)) == word_inverse(Rp, apply_seq(alpha, T));
  });
  CheckResult r{"jordan/hat-commutes/" + alpha.label + "/" + R.description(), "(T^)^α = (T^α)^"};
  r.mode = s.mode;
  r.cases = s.cases;
  if (s.first_failure) r.fail("at T = " + to_string(R, *s.first_failure));
  return r;
}

EMapConsistency check_E_map(const JordanMap& alpha) {
  const FiniteRing& R = *alpha.domain;
  const FiniteRing& Rp = *alpha.codomain;
  const std::size_t n = R.size();
  EMapConsistency out;
  // E(T) = E(V) forces equal (2,2) entries, and for |T| = 3 that entry is
  // -t_2. Bucket the words by it to keep memory at O(|R|^2).
  std::map<Elem, std::vector<ParamSeq>> short_words;
  const auto add_short = [&](ParamSeq word) { short_words[E_word(R, word).d].push_back(std::move(word)); };
  add_short({});
  for (Elem t = 0; t < n; ++t) add_short({t});
  for (Elem t = 0; t < n; ++t)
    for (Elem u = 0; u < n; ++u) add_short({t, u});

  struct Seen {
    Mat2 image;
    ParamSeq word;
  };
  std::vector<std::optional<std::pair<ParamSeq, ParamSeq>>> violations(n);
  std::vector<std::uint64_t> counts(n, 0);
  parallel_for(n, [&](std::size_t bucket) {
    std::unordered_map<Mat2, Seen, Mat2Hash> seen;
    const auto visit = [&](const ParamSeq& T) {
      ++counts[bucket];
      const Mat2 m = E_word(R, T);
      if (m.d != bucket) throw std::logic_error("word placed in wrong bucket");
      const Mat2 img = E_word(Rp, apply_seq(alpha, T));
      auto [it, inserted] = seen.emplace(m, Seen{img, T});
      if (!inserted && it->second.image != img && !violations[bucket])
        violations[bucket] = std::make_pair(it->second.word, T);
    };
    if (auto it = short_words.find(static_cast<Elem>(bucket)); it != short_words.end())
      for (const auto& T : it->second) visit(T);
    const Elem t2 = R.neg(static_cast<Elem>(bucket));
    for (Elem t1 = 0; t1 < n && !violations[bucket]; ++t1)
      for (Elem t3 = 0; t3 < n; ++t3) visit({t1, t2, t3});
  });
  for (std::size_t b = 0; b < n; ++b) {
    out.words += counts[b];
    if (violations[b] && out.well_defined) {
      out.well_defined = false;
      out.violation = violations[b];
    }
  }
  return out;
}

}  // namespace ringline
