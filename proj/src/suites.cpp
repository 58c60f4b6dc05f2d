#include "ringline/suites.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>

#include "ringline/chains.hpp"
#include "ringline/elemgrp.hpp"
#include "ringline/freealg.hpp"
#include "ringline/jordan.hpp"
#include "ringline/projline.hpp"

namespace ringline {

namespace {

using Records = std::vector<CheckResult>;

void append(Records& out, std::vector<CheckResult> more) {
  for (auto& r : more) out.push_back(std::move(r));
}

CheckResult tagged(CheckResult r, const std::string& label) {
  r.name += "/" + label;
  return r;
}

struct LineBundle {
  std::unique_ptr<ProjectiveLine> line;
  DistantGraph graph;
  ComponentOrbit orbit;
};

struct RingCase {
  std::string label;
  RingPtr ring;
};

struct MapCase {
  std::string label;
  bool product_map = false;
  std::unique_ptr<JordanMap> alpha;
};

class Workspace {
 public:
  explicit Workspace(const SuiteInputs& inputs) : inputs_(inputs) {}

  const SuiteInputs& inputs() const { return inputs_; }

  LineBundle& line(const RingPtr& R) {
    auto& slot = lines_[R.get()];
    if (!slot) {
      slot = std::make_unique<LineBundle>();
      slot->line = std::make_unique<ProjectiveLine>(R);
      slot->graph = build_graph(*slot->line);
      slot->orbit = component_of_base(*slot->line);
      keep_.push_back(R);
    }
    return *slot;
  }

  const std::vector<RingCase>& rings() {
    if (rings_.empty()) {
      if (inputs_.ring) {
        rings_.push_back({"config", build_ring(*inputs_.ring)});
      } else {
        for (const auto& p : ring_corpus()) rings_.push_back({p.label, build_ring(p.spec)});
      }
    }
    return rings_;
  }

  const std::vector<MapCase>& maps() {
    if (maps_.empty()) {
      if (inputs_.map) {
        if (!inputs_.ring) throw ConfigError("a map config needs a ring config for its domain");
        const MapConfig& mc = *inputs_.map;
        RingPtr domain = build_ring(*inputs_.ring);
        RingPtr codomain = mc.codomain ? build_ring(*mc.codomain) : domain;
        auto alpha = std::make_unique<JordanMap>(build_map(mc.spec, domain, codomain));
        alpha->label = mc.label.value_or("config");
        maps_.push_back({alpha->label, mc.spec.kind == MapSpec::Kind::product, std::move(alpha)});
      } else {
        for (const auto& p : map_corpus()) {
          auto alpha = std::make_unique<JordanMap>(build_preset(p));
          maps_.push_back({p.label, p.map.kind == MapSpec::Kind::product, std::move(alpha)});
        }
      }
    }
    return maps_;
  }

  /// Rings of the ring cases and all map domains/codomains, deduplicated by description.
  std::vector<RingCase> line_rings() {
    std::vector<RingCase> out;
    std::set<std::string> seen;
    auto add = [&](const std::string& label, const RingPtr& R) {
      if (R->size() > kLineRingLimit || !R->has_structure()) return;
      if (seen.insert(R->description()).second) out.push_back({label, R});
    };
    for (const auto& r : rings()) add(r.label, r.ring);
    for (const auto& m : maps()) {
      add(m.label + "-domain", m.alpha->domain);
      add(m.label + "-codomain", m.alpha->codomain);
    }
    return out;
  }

 private:
  const SuiteInputs& inputs_;
  std::map<const FiniteRing*, std::unique_ptr<LineBundle>> lines_;
  std::vector<RingPtr> keep_;
  std::vector<RingCase> rings_;
  std::vector<MapCase> maps_;
};

bool in_H2(const JordanMap& alpha, const Mat2& m) {
  if (m.b != 0 || m.c != 0 || m.a != m.d) return false;
  const FiniteRing& Rpp = *alpha.image_ring;
  auto a = Rpp.from_parent(m.a);
  return a && Rpp.is_unit(*a) && Rpp.is_central(*a);
}

// ---------------------------------------------------------------- symbolic

void suite_symbolic(Workspace&, Records& out) { append(out, verify_symbolic_identities(8)); }

// ---------------------------------------------------------------- prop25

void suite_prop25(Workspace& ws, Records& out) {
  const SweepBudget& budget = ws.inputs().budget;
  const std::size_t len = ws.inputs().max_len;
  for (const auto& [label, R] : ws.rings()) {
    out.push_back(check_unit_reversal(*R, len, budget));
    out.push_back(tagged(check_word_closed_form(*R, len, budget), label));
    out.push_back(tagged(check_word_inverse(*R, len, budget), label));
    out.push_back(tagged(check_conjugation_identity(*R, std::min<std::size_t>(len, 2), budget), label));
  }
}

// ---------------------------------------------------------------- jordan

void suite_jordan(Workspace& ws, Records& out) {
  const SweepBudget& budget = ws.inputs().budget;
  const std::size_t len = ws.inputs().max_len;
  for (const auto& mc : ws.maps()) {
    const JordanMap& alpha = *mc.alpha;
    out.push_back(verify_unit_behavior(alpha));
    for (int n = 1; n <= 4; ++n) {
      const FreePoly* e = &e_ij(1, n);
      out.push_back(test_j_polynomial({e, &te_ij(1, n - 1)}, "e_1^" + std::to_string(n) + "*te_1^" + std::to_string(n - 1),
                                      alpha, len, budget));
      out.push_back(test_j_polynomial({e, &te_ij(1, n)}, "e_1^" + std::to_string(n) + "*te_1^" + std::to_string(n),
                                      alpha, len, budget));
    }
    out.push_back(check_apply_seq_hat(alpha, 2, budget));
    CheckResult cls{"jordan/classification/" + mc.label, "Jordan homomorphism classification"};
    cls.cases = alpha.domain->size() * alpha.domain->size();
    cls.note = std::string(alpha.homomorphism ? "homomorphism " : "") + (alpha.antihomomorphism ? "antihomomorphism " : "") +
               (alpha.proper() ? "proper " : "") + (alpha.image_closure.closed ? "image-closed" : "image-not-closed");
    if (!alpha.jordan || !alpha.additive || !alpha.unital) cls.fail("not a Jordan homomorphism");
    out.push_back(cls);
  }
}

// ---------------------------------------------------------------- thm35

void suite_thm35(Workspace& ws, Records& out) {
  const SweepBudget& budget = ws.inputs().budget;
  const std::size_t len = ws.inputs().max_len;
  for (const auto& mc : ws.maps()) {
    append(out, test_thm_inv0(*mc.alpha, len, budget));
    out.push_back(check_centre_transfer(*mc.alpha, len));
  }
}

// ---------------------------------------------------------------- nalpha

void suite_nalpha(Workspace& ws, Records& out) {
  for (const auto& mc : ws.maps()) {
    const JordanMap& alpha = *mc.alpha;
    const std::size_t L = alpha.domain->size() <= 81 ? 4 : 3;
    NAlpha na = n_alpha(alpha.view(), L);
    CheckResult r{"nalpha/in-H2/" + mc.label, "N_α inside H''"};
    r.cases = na.subgroup.size();
    r.note = "L=" + std::to_string(L) + ", relations=" + std::to_string(na.relations) +
             ", generators=" + std::to_string(na.generators.size()) + ", subgroup=" + std::to_string(na.subgroup.size());
    for (const Mat2& m : na.subgroup)
      if (!in_H2(alpha, m)) r.fail(to_string(*alpha.codomain, m) + " not in H''");
    out.push_back(r);
    if (alpha.homomorphism || alpha.antihomomorphism || mc.product_map) {
      CheckResult t{"nalpha/trivial/" + mc.label, "N_α = {I} for homomorphisms, antihomomorphisms and their products"};
      t.cases = na.relations;
      if (na.subgroup.size() != 1) t.fail("N_α has " + std::to_string(na.subgroup.size()) + " elements");
      out.push_back(t);
    }
  }
}

// ---------------------------------------------------------------- line

void line_ring_checks(Workspace& ws, const RingCase& rc, Records& out, std::uint64_t seed) {
  LineBundle& b = ws.line(rc.ring);
  const ProjectiveLine& line = *b.line;
  const FiniteRing& R = *rc.ring;
  out.push_back(check_orbit_component(line, b.graph, b.orbit));

  CheckResult conn{"line/connected-diameter/" + rc.label, "finite ring: one component, diameter <= 2"};
  conn.cases = line.size();
  conn.note = std::to_string(line.size()) + " points, " + std::to_string(b.graph.components) + " component(s), diameter " +
              std::to_string(b.graph.diameter.empty() ? 0 : b.graph.diameter[0]);
  if (b.graph.components != 1 || b.graph.diameter[0] > 2) conn.fail(conn.note);
  out.push_back(conn);

  // Point equality against a direct unit-multiple search.
  const auto units = R.units();
  const double cost = static_cast<double>(line.size()) * line.size() * units.size();
  if (cost <= 5e7) {
    CheckResult eq{"line/point-equality/" + rc.label, "R(a,b) = R(c,d) iff (c,d) = u(a,b)"};
    for (Elem a = 0; a < R.size(); ++a) {
      for (Elem bb = 0; bb < R.size(); ++bb) {
        auto p = line.find({a, bb});
        if (!p) continue;
        ++eq.cases;
        Row rep = line.rep(*p);
        bool multiple = std::any_of(units.begin(), units.end(), [&](Elem u) {
          return R.mul(u, rep[0]) == a && R.mul(u, rep[1]) == bb;
        });
        if (!multiple) eq.fail("(" + R.name(a) + "," + R.name(bb) + ") is not a unit multiple of its representative");
      }
    }
    for (std::size_t p = 0; p < line.size(); ++p) {
      for (std::size_t q = p + 1; q < line.size(); ++q) {
        Row rp = line.rep(p), rq = line.rep(q);
        for (Elem u : units)
          if (R.mul(u, rp[0]) == rq[0] && R.mul(u, rp[1]) == rq[1])
            eq.fail(line.name(p) + " and " + line.name(q) + " are unit multiples");
      }
    }
    out.push_back(eq);
  }

  CheckResult two{"line/two-transitive/" + rc.label, "E_2(R) transitive on distant pairs of C"};
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t p : b.orbit.points)
    for (std::uint32_t q : b.graph.adjacency[p])
      if (b.orbit.contains(q)) pairs.emplace_back(p, q);
  if (pairs.size() > 20000) {
    two.mode = Mode::sampled;
    std::mt19937_64 rng(seed);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    pairs.resize(20000);
  }
  for (auto [p, q] : pairs) {
    ++two.cases;
    try {
      two_transitive_normalizer(line, b.orbit, p, q);
    } catch (const std::exception& e) {
      two.fail(line.name(p) + ", " + line.name(q) + ": " + e.what());
    }
  }
  out.push_back(two);
}

struct Induced {
  LineBundle* dom;
  LineBundle* cod;
  InducedMap map;
};

Induced induce(Workspace& ws, const JordanMap& alpha) {
  LineBundle& d = ws.line(alpha.domain);
  LineBundle& c = ws.line(alpha.codomain);
  InducedMap m = induced_map(alpha, *d.line, *c.line, d.orbit, d.graph.diameter[d.graph.component[d.line->base()]]);
  return {&d, &c, std::move(m)};
}

void suite_line(Workspace& ws, Records& out, std::uint64_t seed) {
  for (const auto& rc : ws.line_rings()) line_ring_checks(ws, rc, out, seed);
  for (const auto& mc : ws.maps()) {
    const JordanMap& alpha = *mc.alpha;
    Induced ind = induce(ws, alpha);
    append(out, ind.map.certificate);
    out.push_back(check_equivariance(ind.map));

    CheckResult ext{"sigma/extend-single-component/" + mc.label, "pasted extension equals ᾱ on a connected line"};
    auto table = extend_map(ind.map, ind.dom->graph, {});
    ext.cases = table.size();
    if (table != ind.map.table) ext.fail("pasted map differs from ᾱ");
    out.push_back(ext);

    if (auto sig = sigma_extension(ind.map, seed)) append(out, sig->checks);
  }
}

// ---------------------------------------------------------------- harmonic

void suite_harmonic(Workspace& ws, Records& out, std::uint64_t seed) {
  SweepBudget budget = ws.inputs().budget;
  budget.seed = seed;
  for (const auto& mc : ws.maps()) {
    Induced ind = induce(ws, *mc.alpha);
    append(out, check_map_preservation(ind.map, ind.dom->graph, ind.cod->graph, budget));
  }
  if (ws.inputs().ring || ws.inputs().map) return;

  // Fixed examples: zmod(4) quadruple, and p2 = p3 in characteristic 2.
  RingPtr z4 = build_ring(RingSpec::zmod(4));
  LineBundle& l4 = ws.line(z4);
  CheckResult ex{"harmonic/example-zmod4", "(R(1,0),R(0,1),R(1,1),R(3,1)) harmonic"};
  ex.cases = 1;
  const ProjectiveLine& line4 = *l4.line;
  if (!harmonic(line4, line4.base(), line4.point_01(), line4.point_11(), line4.index_of({3, 1})))
    ex.fail("quadruple not harmonic");
  out.push_back(ex);

  for (const auto& [label, spec] : std::vector<std::pair<std::string, RingSpec>>{
           {"gf4", gf4()}, {"m2f2", RingSpec::matrix(RingSpec::gf(2), 2)}}) {
    RingPtr R = build_ring(spec);
    LineBundle& b = ws.line(R);
    const ProjectiveLine& line = *b.line;
    CheckResult c2{"harmonic/char2-coincide/" + label, "characteristic 2: p2 = p3"};
    const std::size_t n = line.size();
    for (std::size_t p0 = 0; p0 < n; ++p0)
      for (std::size_t p1 : b.graph.adjacency[p0])
        for (std::size_t p2 = 0; p2 < n; ++p2)
          for (std::size_t p3 = 0; p3 < n; ++p3) {
            if (!harmonic_precondition(line, p0, p1, p2, p3) || !harmonic(line, p0, p1, p2, p3)) continue;
            ++c2.cases;
            if (p2 != p3) c2.fail(line.name(p2) + " != " + line.name(p3));
          }
    out.push_back(c2);
  }
}

// ---------------------------------------------------------------- chains

void run_chain_map_instance(Workspace& ws, Records& out, const std::string& label, const JordanMap& alpha,
                        const std::vector<std::string>& kgen, const std::vector<std::string>& kpgen,
                        std::optional<bool> expect, std::uint64_t seed) {
  auto parse_all = [](const FiniteRing& R, const std::vector<std::string>& names) {
    std::vector<Elem> out;
    for (const auto& s : names) out.push_back(R.parse(s));
    return out;
  };
  const auto kg = parse_all(*alpha.domain, kgen);
  const auto kpg = parse_all(*alpha.codomain, kpgen);
  SubfieldK K = make_subfield(alpha.domain, kg);
  SubfieldK Kp = make_subfield(alpha.codomain, kpg);
  Induced ind = induce(ws, alpha);
  ChainSet chains = enumerate_chains(*ind.dom->line, K);
  const bool same = alpha.domain.get() == alpha.codomain.get() && K.elements == Kp.elements;
  ChainSet target_chains = same ? chains : enumerate_chains(*ind.cod->line, Kp);

  CheckResult count{"chains/count/" + label, "number of K-chains"};
  count.cases = chains.chains.size();
  count.note = std::to_string(chains.chains.size()) + " chains of " + std::to_string(K.elements.size() + 1) +
               " points; K central=" + (K.central ? "yes" : "no") + ", inner-invariant=" + (K.inner_invariant ? "yes" : "no");
  out.push_back(count);
  append(out, check_chain_properties(*ind.dom->line, ind.dom->graph, chains, K, label, seed));
  if (!same) append(out, check_chain_properties(*ind.cod->line, ind.cod->graph, target_chains, Kp, label + "-codomain", seed));

  ChainMapResult res = check_chain_map(ind.map, chains, target_chains, K, Kp);
  for (auto& r : res.records) {
    if (r.name.rfind("chain-map/diag-reduction/", 0) == 0) r.name = "chain-map/diag-reduction/" + label;
    out.push_back(r);
  }
  if (expect) {
    CheckResult e{"chain-map/expected/" + label, "preset outcome of the chain criterion"};
    e.cases = 1;
    e.note = std::string("expected ") + (*expect ? "true" : "false");
    if (res.preserves_chains != *expect || res.condition.holds != *expect)
      e.fail(std::string("preservation=") + (res.preserves_chains ? "true" : "false") +
             ", condition=" + (res.condition.holds ? "true" : "false"));
    out.push_back(e);
  }
}

void suite_chains(Workspace& ws, Records& out, std::uint64_t seed) {
  const SuiteInputs& in = ws.inputs();
  if (in.map || in.subfield) {
    if (!in.map || !in.subfield) throw ConfigError("the chains suite needs --ring, --map and --subfield");
    const MapCase& mc = ws.maps().front();
    const auto& kp = in.subfield_prime ? in.subfield_prime->generators : in.subfield->generators;
    run_chain_map_instance(ws, out, mc.label, *mc.alpha, in.subfield->generators, kp, std::nullopt, seed);
    return;
  }
  for (const auto& p : chain_map_corpus()) {
    JordanMap alpha = build_preset(p.map);
    run_chain_map_instance(ws, out, p.label, alpha, p.k_generators, p.kp_generators, p.expect_preserves, seed);
    if (p.label == "identity-gf4-gf2") {
      RingPtr R = alpha.domain;
      const Elem g[1] = {R->one()};
      ChainSet cs = enumerate_chains(*ws.line(R).line, make_subfield(R, g));
      CheckResult ten{"chains/ten-chains/gf4-over-gf2", "gf(4)/gf(2): 10 chains"};
      ten.cases = cs.chains.size();
      if (cs.chains.size() != 10) ten.fail(std::to_string(cs.chains.size()) + " chains");
      out.push_back(ten);
    }
  }
  // Subfields of the ring corpus.
  for (const auto& [label, R] : ws.rings()) {
    CheckResult sf{"chains/subfields/" + label, "subfields by closure search"};
    auto fields = find_subfields(R, R->size());
    sf.cases = R->size();
    std::string sizes;
    for (const auto& K : fields) sizes += (sizes.empty() ? "" : ",") + std::to_string(K.elements.size());
    sf.note = "sizes {" + sizes + "}";
    for (const auto& K : fields)
      if (!is_subfield(*R, K.elements)) sf.fail("non-field returned");
    out.push_back(sf);
  }
}

// ---------------------------------------------------------------- worked examples

void suite_worked_examples(Workspace& ws, Records& out) {
  (void)ws;
  // The e_2 <-> e_3 swap over gf(3).
  {
    JordanMap alpha = build_preset(herzer_swap("swap-ext-gf3", RingSpec::gf(3)));
    const FiniteRing& R = *alpha.domain;
    const Elem e1 = R.parse("(0,1,0,0)"), e2 = R.parse("(0,0,1,0)"), e3 = R.parse("(0,0,0,1)");
    const Elem u = R.sub(R.one(), e3);
    const ParamSeq T13{e1, e3, R.neg(e1), R.neg(e3)};
    const ParamSeq T12{e1, e2, R.neg(e1), R.neg(e2)};

    CheckResult c1{"swap-example/commutator-e1-e3", "E(ε1)E(ε3)E(-ε1)E(-ε3) = I"};
    c1.cases = 1;
    if (E_word(R, T13) != identity(R)) c1.fail("got " + to_string(R, E_word(R, T13)));
    out.push_back(c1);
    CheckResult c2{"swap-example/commutator-e1-e2", "E(ε1)E(ε2)E(-ε1)E(-ε2) = diag(1-ε3,1-ε3)"};
    c2.cases = 1;
    if (E_word(R, T12) != diag(u, u)) c2.fail("got " + to_string(R, E_word(R, T12)));
    out.push_back(c2);

    CheckResult proper{"swap-example/proper", "the swap is a proper Jordan automorphism"};
    proper.cases = R.size() * R.size();
    if (!alpha.proper()) proper.fail("not proper");
    out.push_back(proper);

    NAlpha na = n_alpha(alpha.view(), 4);
    CheckResult contains{"swap-example/nalpha-contains-diag", "diag(1-ε3,1-ε3) in N_α (L=4)"};
    contains.cases = na.generators.size();
    if (!std::binary_search(na.subgroup.begin(), na.subgroup.end(), diag(u, u)))
      contains.fail("diag(1-ε3,1-ε3) not found among " + std::to_string(na.subgroup.size()) + " elements");
    out.push_back(contains);
    CheckResult inh{"swap-example/nalpha-in-H2", "N_α inside H''"};
    inh.cases = na.subgroup.size();
    for (const Mat2& m : na.subgroup)
      if (!in_H2(alpha, m)) inh.fail(to_string(R, m) + " not in H''");
    out.push_back(inh);

    CheckResult pair{"swap-example/no-E-map-displayed-pair", "E(T) = E(V) but E(T^α) != E(V^α)"};
    pair.cases = 1;
    const ParamSeq empty;
    if (E_word(R, T13) != E_word(R, empty) || E_word(R, apply_seq(alpha, T13)) == identity(R))
      pair.fail("T=" + to_string(R, T13) + " does not separate");
    pair.note = "T=" + to_string(R, T13) + ", V=()";
    out.push_back(pair);

    EMapConsistency cons = check_E_map(alpha);
    CheckResult search{"swap-example/no-E-map-search", "a pair |T|,|V| <= 3 with E(T) = E(V), E(T^α) != E(V^α)"};
    search.cases = cons.words;
    if (cons.well_defined) {
      search.fail("no violating pair among words of length <= 3");
    } else {
      search.note = "T=" + to_string(R, cons.violation->first) + ", V=" + to_string(R, cons.violation->second);
    }
    out.push_back(search);
  }
  // The swap followed by the right regular representation.
  {
    MapPreset preset = regular_rep_of_swap();
    JordanMap beta = build_preset(preset);
    const FiniteRing& R = *beta.domain;
    const FiniteRing& Rp = *beta.codomain;
    const FiniteRing& D = *R.components()[0];
    RegularRepresentation rho = regular_representation(beta.domain);
    const Elem e1 = R.parse("(0,1,0,0)"), e3 = R.parse("(0,0,0,1)");
    const Elem u_rho = rho.values[R.sub(R.one(), e3)];
    const Elem u = Rp.parse(rho.codomain->name(u_rho));
    const auto coords = Rp.coords(u);

    CheckResult row{"regular-rep-example/first-row", "first row of (1-ε3)^ρ is (1,0,0,-1)"};
    row.cases = 4;
    const std::vector<Elem> expect{D.one(), 0, 0, D.neg(D.one())};
    if (!std::equal(expect.begin(), expect.end(), coords.begin())) row.fail("got " + Rp.name(u));
    row.note = "over " + D.description() + ", -1 = " + D.name(D.neg(D.one()));
    out.push_back(row);

    CheckResult in_n{"regular-rep-example/diag-in-N-beta", "diag(u',u') = E(T^β) with E(T) = I"};
    in_n.cases = 1;
    const ParamSeq T{e1, e3, R.neg(e1), R.neg(e3)};
    if (E_word(R, T) != identity(R) || E_word(Rp, apply_seq(beta, T)) != diag(u, u))
      in_n.fail("E(T^β) = " + to_string(Rp, E_word(Rp, apply_seq(beta, T))));
    out.push_back(in_n);

    CheckResult normal{"regular-rep-example/not-normal", "E(r')^{-1} diag(u',u') E(r') not diagonal for some r'"};
    auto r = find_conjugate_off_diagonal(Rp, diag(u, u));
    normal.cases = r ? *r + 1 : Rp.size();
    if (!r) {
      normal.fail("every conjugate is diagonal");
    } else {
      normal.note = "r'=" + Rp.name(*r);
    }
    out.push_back(normal);

    CheckResult mono{"regular-rep-example/monomorphism", "β injective, R'' = R^β"};
    mono.cases = R.size();
    if (std::set<Elem>(beta.values.begin(), beta.values.end()).size() != R.size()) mono.fail("β not injective");
    if (!beta.image_closure.closed) mono.fail("R^β not a subring");
    out.push_back(mono);
  }
  // e_3 -> 0 has an image that is not a subring.
  {
    JordanMap alpha = build_preset(herzer_kill_e3("kill-e3-ext-gf3", RingSpec::gf(3)));
    const FiniteRing& R = *alpha.codomain;
    CheckResult g{"kill-e3-example/image-not-subring", "R^α not a subring, witness ε3"};
    g.cases = alpha.image_closure.elements.size();
    const Elem e3 = R.parse("(0,0,0,1)");
    if (alpha.image_closure.closed) {
      g.fail("image reported closed");
    } else if (!alpha.image_closure.witness || *alpha.image_closure.witness != e3) {
      g.fail("witness " + (alpha.image_closure.witness ? R.name(*alpha.image_closure.witness) : std::string("none")));
    }
    if (alpha.image_closure.product_witness)
      g.note = "witness " + R.name(e3) + " = " + R.name((*alpha.image_closure.product_witness)[0]) +
               (alpha.image_closure.witness_is_sum ? " + " : " * ") + R.name((*alpha.image_closure.product_witness)[1]);
    out.push_back(g);
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"symbolic", "prop25", "jordan", "thm35",          "nalpha", "line",
                                              "harmonic", "chains", "paper-examples", "all"};
  return names;
}

RunReport run_suite(const std::string& name, std::uint64_t seed, const SuiteInputs& inputs) {
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw std::invalid_argument("unknown suite \"" + name + "\"");
  RunReport report;
  report.suite = name;
  report.seed = seed;
  report.config_digests = inputs.config_digests;
  SuiteInputs seeded = inputs;
  seeded.budget.seed = seed;
  Workspace ws(seeded);
  const bool all = name == "all";
  auto want = [&](const char* s) { return all || name == s; };
  Records& out = report.records;
  if (want("symbolic")) suite_symbolic(ws, out);
  if (want("prop25")) suite_prop25(ws, out);
  if (want("jordan")) suite_jordan(ws, out);
  if (want("thm35")) suite_thm35(ws, out);
  if (want("nalpha")) suite_nalpha(ws, out);
  if (want("line")) suite_line(ws, out, seed);
  if (want("harmonic")) suite_harmonic(ws, out, seed);
  if (want("chains")) suite_chains(ws, out, seed);
  if (want("paper-examples") && !inputs.ring && !inputs.map) suite_worked_examples(ws, out);
  return report;
}

}  // namespace ringline
