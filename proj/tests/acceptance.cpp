// End-to-end acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ringline/presets.hpp"
#include "ringline/projline.hpp"
#include "ringline/suites.hpp"

using namespace ringline;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Index {
  std::map<std::string, const CheckResult*> by_name;

  explicit Index(const RunReport& r) {
    for (const auto& c : r.records) by_name[c.name] = &c;
  }
  const CheckResult* get(const std::string& name) const {
    auto it = by_name.find(name);
    return it == by_name.end() ? nullptr : it->second;
  }
  std::vector<const CheckResult*> prefix(const std::string& p) const {
    std::vector<const CheckResult*> out;
    for (auto it = by_name.lower_bound(p); it != by_name.end() && it->first.rfind(p, 0) == 0; ++it)
      out.push_back(it->second);
    return out;
  }
};

// Accumulates the reason for the first problem found.
struct Verdict {
  bool ok = true;
  std::string why;

  void need(bool cond, const std::string& reason) {
    if (!cond && ok) {
      ok = false;
      why = reason;
    }
  }
  void need_pass(const CheckResult* c, const std::string& name) {
    need(c != nullptr, "missing " + name);
    if (c) need(c->pass, name + ": " + c->witness);
  }
  void need_exhaustive(const CheckResult* c, const std::string& name) {
    need_pass(c, name);
    if (c) need(c->mode == Mode::exhaustive, name + " not exhaustive");
  }
  void need_all_pass(const std::vector<const CheckResult*>& cs, const std::string& what) {
    need(!cs.empty(), "no records for " + what);
    for (const CheckResult* c : cs) need(c->pass, c->name + ": " + c->witness);
  }
};

int failures = 0;

void report(int n, const std::string& title, const Verdict& v, const std::string& detail) {
  if (!v.ok) ++failures;
  std::printf("%s criterion %d: %s (%s)\n", v.ok ? "PASS" : "FAIL", n, title.c_str(),
              v.ok ? detail.c_str() : v.why.c_str());
  std::fflush(stdout);
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

}  // namespace

int main() {
  const auto maps = map_corpus();
  const auto rings = ring_corpus();

  // 1. Free-algebra identities up to index 8.
  {
    auto t0 = Clock::now();
    RunReport r = run_suite("symbolic", 0);
    const double s = seconds_since(t0);
    Index ix(r);
    Verdict v;
    for (const char* name : {"symbolic/e-base-cases", "symbolic/e-left-recurrence", "symbolic/e-right-recurrence",
                             "symbolic/te-left-recurrence", "symbolic/te-right-recurrence",
                             "symbolic/monomial-shape", "symbolic/shift-and-padding", "symbolic/e-word-closed-form",
                             "symbolic/e-word-inverse"})
      v.need_exhaustive(ix.get(name), name);
    v.need(r.failures() == 0, "symbolic failures");
    v.need(s <= 10.0, "took " + fmt_seconds(s));
    report(1, "symbolic identities, indices <= 8", v, std::to_string(r.records.size()) + " records, " + fmt_seconds(s));
  }

  // 2. Unit reversal over the ring corpus, n <= 3.
  {
    auto t0 = Clock::now();
    RunReport r = run_suite("prop25", 0);
    const double s = seconds_since(t0);
    Index ix(r);
    Verdict v;
    std::uint64_t cases = 0;
    for (const auto& ring : rings) {
      const std::string name = "prop25/" + ring.spec.describe();
      v.need_exhaustive(ix.get(name), name);
      if (ix.get(name)) cases += ix.get(name)->cases;
    }
    v.need(r.failures() == 0, "prop25 suite failures");
    v.need(s <= 60.0, "took " + fmt_seconds(s));
    report(2, "unit reversal, exhaustive n <= 3", v,
           std::to_string(rings.size()) + " rings, " + std::to_string(cases) + " sequences, " + fmt_seconds(s));
  }

  // The remaining criteria read the full run; criterion 10 repeats it.
  auto t0 = Clock::now();
  RunReport all = run_suite("all", 0);
  const double all_seconds = seconds_since(t0);
  const std::string first = all.serialize();
  Index ix(all);

  // 3. J-polynomials and unit/zero transfer over the Jordan corpus.
  {
    Verdict v;
    std::size_t records = 0;
    for (const auto& m : maps) {
      const std::string suffix = "/" + m.label + "/" + m.domain.describe();
      for (int n = 1; n <= 4; ++n) {
        for (int k : {n - 1, n}) {
          const std::string name = "jordan/j-polynomial/e_1^" + std::to_string(n) + "*te_1^" + std::to_string(k) + suffix;
          v.need_pass(ix.get(name), name);
          ++records;
        }
      }
      for (const char* part : {"thm35/unit-entry", "thm35/zero-entry", "jordan/centre-transfer"}) {
        v.need_pass(ix.get(part + suffix), part + suffix);
        ++records;
      }
    }
    v.need_all_pass(ix.prefix("jordan/"), "jordan");
    v.need_all_pass(ix.prefix("thm35/"), "thm35");
    report(3, "J-polynomials and unit/zero transfer", v,
           std::to_string(maps.size()) + " maps, " + std::to_string(records) + " records");
  }

  // 4. The swap over gf(3).
  {
    Verdict v;
    for (const char* name : {"swap-example/commutator-e1-e3", "swap-example/commutator-e1-e2", "swap-example/proper",
                             "swap-example/nalpha-contains-diag", "swap-example/nalpha-in-H2", "swap-example/no-E-map-displayed-pair",
                             "swap-example/no-E-map-search"})
      v.need_pass(ix.get(name), name);
    const CheckResult* s = ix.get("swap-example/no-E-map-search");
    report(4, "swap example: commutators, N_alpha, no E-map", v, s ? s->note : "");
  }

  // 5. Swap followed by the regular representation.
  {
    Verdict v;
    for (const char* name : {"regular-rep-example/first-row", "regular-rep-example/diag-in-N-beta", "regular-rep-example/not-normal", "regular-rep-example/monomorphism"})
      v.need_pass(ix.get(name), name);
    const CheckResult* n = ix.get("regular-rep-example/not-normal");
    report(5, "regular representation example: first row, not normal", v, n ? n->note : "");
  }

  // 6. e_3 -> 0.
  {
    Verdict v;
    v.need_pass(ix.get("kill-e3-example/image-not-subring"), "kill-e3-example/image-not-subring");
    const CheckResult* g = ix.get("kill-e3-example/image-not-subring");
    report(6, "e_3 -> 0: image not a subring", v, g ? g->note : "");
  }

  // 7. Induced map certificates.
  {
    Verdict v;
    for (const auto& m : maps) {
      for (const char* part : {"well-defined", "second-row", "stabilizer-transfer", "equivariance", "affine",
                               "fundamental-triple", "single-formula", "image-in-C2"}) {
        const std::string name = std::string("induced/") + part + "/" + m.label;
        v.need_exhaustive(ix.get(name), name);
      }
      const CheckResult* sf = ix.get("induced/single-formula/" + m.label);
      if (sf) v.need(sf->note.find("m=2") != std::string::npos, sf->name + " used " + sf->note);
    }
    for (const auto& ring : rings) {
      const bool covered = std::any_of(maps.begin(), maps.end(), [&](const MapPreset& m) {
        return m.domain.describe() == ring.spec.describe();
      });
      v.need(covered, "no corpus map on " + ring.label);
    }
    v.need_all_pass(ix.prefix("induced/"), "induced");
    report(7, "induced map: certificate, equivariance, affine, triple, single formula", v,
           std::to_string(maps.size()) + " maps covering all " + std::to_string(rings.size()) + " corpus rings");
  }

  // 8. Distant pairs, contraction and harmonic quadruples.
  {
    Verdict v;
    std::string detail;
    for (const auto& m : maps) {
      v.need_exhaustive(ix.get("harmonic/distant-pairs/" + m.label), "harmonic/distant-pairs/" + m.label);
      v.need_exhaustive(ix.get("harmonic/contraction/" + m.label), "harmonic/contraction/" + m.label);
      const std::string hname = "harmonic/quadruples/" + m.label;
      const CheckResult* h = ix.get(hname);
      v.need_pass(h, hname);
      if (!h) continue;
      const std::size_t points = ProjectiveLine(build_ring(m.domain)).size();
      if (points <= 30) v.need(h->mode == Mode::exhaustive, hname + " not exhaustive");
      if (h->mode == Mode::sampled) {
        v.need(h->cases >= 100'000, hname + " only " + std::to_string(h->cases) + " samples");
        v.need(h->note.find("seed 0") != std::string::npos, hname + " not seeded with 0");
      }
      if (points == 108) detail += m.label + ": " + to_string(h->mode) + " " + std::to_string(h->cases) + "; ";
    }
    v.need_all_pass(ix.prefix("harmonic/"), "harmonic");
    if (detail.size() > 2) detail.resize(detail.size() - 2);
    report(8, "distant pairs, contraction, harmonic quadruples", v, detail);
  }

  // 9. Chain preservation against the unit condition.
  {
    Verdict v;
    const auto agreements = ix.prefix("chain-map/agreement/");
    v.need(agreements.size() >= 3, "only " + std::to_string(agreements.size()) + " instances");
    v.need_all_pass(agreements, "chain-map/agreement");
    bool violating = false, preserving = false;
    for (const CheckResult* c : agreements) {
      violating = violating || c->note.find("preservation=false") != std::string::npos;
      preserving = preserving || c->note.find("preservation=true") != std::string::npos;
    }
    v.need(violating, "no violating instance");
    v.need(preserving, "no preserving instance");
    v.need_pass(ix.get("chain-map/agreement/swap-ext-gf3"), "chain-map/agreement/swap-ext-gf3");
    v.need_all_pass(ix.prefix("chain-map/expected/"), "chain-map/expected");
    v.need_all_pass(ix.prefix("chains/"), "chains");
    for (const auto& inst : chain_map_corpus())
      for (const char* part : {"size-and-component", "D_c", "distant-iff-common-chain", "distant-triples"})
        v.need_exhaustive(ix.get(std::string("chains/") + part + "/" + inst.label),
                          std::string("chains/") + part + "/" + inst.label);
    const CheckResult* ten = ix.get("chains/ten-chains/gf4-over-gf2");
    v.need_pass(ten, "chains/ten-chains/gf4-over-gf2");
    if (ten) v.need(ten->cases == 10, "gf(4)/gf(2) has " + std::to_string(ten->cases) + " chains");
    report(9, "chain preservation iff unit condition; chain sanity; ten chains", v,
           std::to_string(agreements.size()) + " instances, gf(4)/gf(2) chains = " +
               (ten ? std::to_string(ten->cases) : std::string("?")));
  }

  // 10. Determinism and total time.
  {
    auto t1 = Clock::now();
    RunReport again = run_suite("all", 0);
    const double again_seconds = seconds_since(t1);
    Verdict v;
    v.need(again.serialize() == first, "reports differ between runs");
    v.need(all.failures() == 0, std::to_string(all.failures()) + " failing checks in the full run");
    v.need(all_seconds <= 600.0 && again_seconds <= 600.0, "full run took " + fmt_seconds(std::max(all_seconds, again_seconds)));
    report(10, "run_suite(all, 0) deterministic, <= 10 min", v,
           std::to_string(all.records.size()) + " checks, " + fmt_seconds(all_seconds) + " and " +
               fmt_seconds(again_seconds) + ", digest " + digest(first));
  }

  return failures == 0 ? 0 : 1;
}
