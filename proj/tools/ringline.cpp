// Command-line front end: ring/map configs, point and chain listings, and
// verification suites with a line-delimited JSON report.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ringline/chains.hpp"
#include "ringline/config.hpp"
#include "ringline/elemgrp.hpp"
#include "ringline/freealg.hpp"
#include "ringline/jordan.hpp"
#include "ringline/projline.hpp"
#include "ringline/report.hpp"
#include "ringline/rings.hpp"
#include "ringline/suites.hpp"

using namespace ringline;

namespace {

struct Options {
  std::string ring, map, subfield, subfield_prime, report, poly;
  std::uint64_t seed = 0;
  std::uint64_t budget = SweepBudget{}.budget;
  std::size_t max_len = 3;
  bool check_harmonic = false;
  std::string suite;
};

struct Loaded {
  std::vector<std::pair<std::string, std::string>> digests;
  std::optional<RingSpec> ring;
  std::optional<MapConfig> map;
  std::optional<SubfieldConfig> subfield, subfield_prime;
};

Loaded load(const Options& o) {
  Loaded l;
  auto read = [&](const std::string& key, const std::string& path) {
    std::string text = read_file(path);
    l.digests.emplace_back(key, digest(text));
    return text;
  };
  if (!o.ring.empty()) l.ring = parse_ring_config(read("ring", o.ring));
  if (!o.map.empty()) l.map = parse_map_config(read("map", o.map));
  if (!o.subfield.empty()) l.subfield = parse_subfield_config(read("subfield", o.subfield));
  if (!o.subfield_prime.empty()) l.subfield_prime = parse_subfield_config(read("subfield-prime", o.subfield_prime));
  return l;
}

RingPtr need_ring(const Loaded& l) {
  if (!l.ring) throw ConfigError("--ring is required");
  return build_ring(*l.ring);
}

JordanMap need_map(const Loaded& l, const RingPtr& domain) {
  if (!l.map) throw ConfigError("--map is required");
  RingPtr codomain = l.map->codomain ? build_ring(*l.map->codomain) : domain;
  JordanMap m = build_map(l.map->spec, domain, codomain);
  if (l.map->label) m.label = *l.map->label;
  return m;
}

SubfieldK need_subfield(const std::optional<SubfieldConfig>& c, const RingPtr& R, const char* flag) {
  if (!c) throw ConfigError(std::string(flag) + " is required");
  std::vector<Elem> gens;
  for (const auto& g : c->generators) gens.push_back(R->parse(g));
  return make_subfield(R, gens);
}

int finish(const Options& o, RunReport report) {
  std::cout << report.summary();
  if (!o.report.empty()) {
    std::ofstream out(o.report, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + o.report);
    out << report.serialize();
  }
  return static_cast<int>(std::min<std::size_t>(report.failures(), 255));
}

RunReport records_report(const std::string& name, const Options& o, const Loaded& l, std::vector<CheckResult> recs) {
  RunReport r;
  r.suite = name;
  r.seed = o.seed;
  r.config_digests = l.digests;
  r.records = std::move(recs);
  return r;
}

void print_line(const ProjectiveLine& line) {
  for (std::size_t p = 0; p < line.size(); ++p) std::cout << p << ' ' << line.name(p) << '\n';
}

int run(const std::string& group, const std::string& cmd, const Options& o) {
  const Loaded l = load(o);
  SweepBudget budget;
  budget.budget = o.budget;
  budget.seed = o.seed;

  if (group == "suite") {
    SuiteInputs in;
    in.ring = l.ring;
    in.map = l.map;
    in.subfield = l.subfield;
    in.subfield_prime = l.subfield_prime;
    in.config_digests = l.digests;
    in.budget = budget;
    in.max_len = o.max_len;
    return finish(o, run_suite(o.suite, o.seed, in));
  }
  if (group == "sym") {
    if (cmd == "verify") return finish(o, records_report("sym", o, l, verify_symbolic_identities(static_cast<int>(o.max_len))));
    std::cout << parse_poly_expression(o.poly).to_string() << '\n';
    return 0;
  }
  RingPtr R = need_ring(l);
  if (group == "ring") {
    std::cout << "ring:           " << R->description() << '\n'
              << "size:           " << R->size() << '\n'
              << "characteristic: " << R->characteristic() << '\n'
              << "commutative:    " << (R->is_commutative() ? "yes" : "no") << '\n';
    if (R->has_structure())
      std::cout << "units:          " << R->units().size() << '\n' << "centre:         " << R->centre().size() << '\n';
    return finish(o, records_report("ring", o, l, {R->check_axioms(o.seed)}));
  }
  if (group == "e2") {
    if (cmd == "enumerate") {
      GroupTable g = enumerate_E2(*R);
      CentreH h = centre_H(*R, g);
      std::cout << "|E_2(R)| = " << g.size() << "\n|H| = " << h.elements.size() << '\n';
      for (const Mat2& m : h.elements) std::cout << "  " << to_string(*R, m) << '\n';
      CheckResult c{"e2/centre-agrees/" + R->description(), "H = E_2(R) ∩ scalar central units"};
      c.cases = g.size();
      if (!h.agrees_with_commutant) c.fail("scalar description differs from the commutant");
      return finish(o, records_report("e2", o, l, {c}));
    }
    JordanMap alpha = need_map(l, R);
    NAlpha na = n_alpha(alpha.view(), o.max_len);
    std::cout << "relations (|T| <= " << o.max_len << "): " << na.relations << '\n';
    for (std::size_t i = 0; i < na.generators.size(); ++i)
      std::cout << "  " << to_string(*alpha.codomain, na.generators[i]) << "  from T = "
                << to_string(*R, na.generator_words[i]) << '\n';
    std::cout << "subgroup size: " << na.subgroup.size() << " (bounded by relation length)\n";
    return 0;
  }
  if (group == "jordan") {
    JordanMap alpha = need_map(l, R);
    if (cmd == "verify") {
      std::cout << alpha.classification() << '\n';
      return finish(o, records_report("jordan", o, l, {verify_unit_behavior(alpha)}));
    }
    FreePoly f = parse_poly_expression(o.poly);
    return finish(o, records_report("jordan", o, l, {test_j_polynomial({&f}, o.poly, alpha, o.max_len, budget)}));
  }
  if (group == "line") {
    ProjectiveLine line(R);
    if (cmd == "enumerate") {
      print_line(line);
      return 0;
    }
    DistantGraph g = build_graph(line);
    if (cmd == "graph") {
      for (std::size_t p = 0; p < line.size(); ++p) {
        std::cout << line.name(p) << ':';
        for (std::uint32_t q : g.adjacency[p]) std::cout << ' ' << line.name(q);
        std::cout << '\n';
      }
      return 0;
    }
    if (cmd == "diameter") {
      std::cout << "points: " << line.size() << "\ncomponents: " << g.components << '\n';
      for (std::size_t c = 0; c < g.components; ++c) std::cout << "diameter[" << c << "]: " << g.diameter[c] << '\n';
      return 0;
    }
    JordanMap alpha = need_map(l, R);
    ProjectiveLine target_own(alpha.codomain);
    const ProjectiveLine& target = alpha.codomain.get() == R.get() ? line : target_own;
    ComponentOrbit orbit = component_of_base(line);
    InducedMap m = induced_map(alpha, line, target, orbit, g.diameter[g.component[line.base()]]);
    for (std::size_t p : orbit.points)
      std::cout << line.name(p) << " -> " << target.name(static_cast<std::size_t>(m.table[p])) << '\n';
    std::cout << "observed: ᾱ " << (m.injective ? "injective" : "not injective") << '\n';
    std::vector<CheckResult> recs = m.certificate;
    recs.push_back(check_equivariance(m));
    if (o.check_harmonic) {
      DistantGraph tg = alpha.codomain.get() == R.get() ? g : build_graph(target);
      for (auto& r : check_map_preservation(m, g, tg, budget)) recs.push_back(std::move(r));
    }
    return finish(o, records_report("line", o, l, std::move(recs)));
  }
  if (group == "chains") {
    ProjectiveLine line(R);
    SubfieldK K = need_subfield(l.subfield, R, "--subfield");
    if (cmd == "list") {
      ChainSet cs = enumerate_chains(line, K);
      std::cout << cs.chains.size() << " chains\n";
      for (const Chain& c : cs.chains) {
        std::cout << '{';
        for (std::size_t i = 0; i < c.points.size(); ++i) std::cout << (i ? ", " : "") << line.name(c.points[i]);
        std::cout << "}  via " << to_string(*R, c.witness) << '\n';
      }
      DistantGraph g = build_graph(line);
      return finish(o, records_report("chains", o, l, check_chain_properties(line, g, cs, K, "config", o.seed)));
    }
    JordanMap alpha = need_map(l, R);
    SubfieldK Kp = need_subfield(l.subfield_prime ? l.subfield_prime : l.subfield, alpha.codomain, "--subfield-prime");
    ProjectiveLine target_own(alpha.codomain);
    const ProjectiveLine& target = alpha.codomain.get() == R.get() ? line : target_own;
    DistantGraph g = build_graph(line);
    ComponentOrbit orbit = component_of_base(line);
    InducedMap m = induced_map(alpha, line, target, orbit, g.diameter[g.component[line.base()]]);
    ChainSet cs = enumerate_chains(line, K);
    ChainSet tcs = enumerate_chains(target, Kp);
    ChainMapResult res = check_chain_map(m, cs, tcs, K, Kp);
    std::cout << "chain preservation: " << (res.preserves_chains ? "true" : "false") << '\n'
              << "unit condition:     " << (res.condition.holds ? "true" : "false") << '\n';
    if (res.condition.holds) {
      for (auto [c, u] : res.condition.witnesses)
        std::cout << "  c = " << R->name(c) << "  u'_c = " << alpha.codomain->name(u) << '\n';
    } else {
      std::cout << "  failing c = " << R->name(*res.condition.failing_c) << '\n';
    }
    return finish(o, records_report("chains", o, l, res.records));
  }
  throw ConfigError("unknown command");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ringline: Jordan homomorphisms and projective lines over finite rings"};
  app.require_subcommand(1);
  Options o;
  std::string group, cmd;
  std::vector<CLI::Option*> max_len_opts;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--ring", o.ring, "ring config (JSON)");
    sub->add_option("--map", o.map, "map config (JSON)");
    sub->add_option("--subfield", o.subfield, "subfield config of the domain (JSON)");
    sub->add_option("--subfield-prime", o.subfield_prime, "subfield config of the codomain (JSON)");
    sub->add_option("--seed", o.seed, "seed for sampled checks");
    sub->add_option("--budget", o.budget, "largest exhaustive sweep before sampling");
    max_len_opts.push_back(sub->add_option("--max-len", o.max_len, "maximal word length / index"));
    sub->add_option("--report", o.report, "write the line-delimited JSON report here");
  };
  auto group_cmd = [&](const std::string& name, const std::string& help, std::vector<std::string> cmds) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    for (const auto& c : cmds) {
      CLI::App* s = g->add_subcommand(c);
      common(s);
      if (name == "sym" && c == "epoly") s->add_option("expr", o.poly, "expression, e.g. \"e 1 4 * te 1 3\"")->required();
      if (name == "jordan" && c == "jtest") s->add_option("--poly", o.poly, "polynomial expression")->required();
      if (name == "line" && c == "induced") s->add_flag("--check-harmonic", o.check_harmonic, "run the harmonic checks");
      s->callback([&, name, c] {
        group = name;
        cmd = c;
      });
    }
  };
  group_cmd("sym", "free-algebra identities", {"verify", "epoly"});
  group_cmd("ring", "ring information", {"info"});
  group_cmd("e2", "elementary group", {"enumerate", "nalpha"});
  group_cmd("jordan", "Jordan homomorphisms", {"verify", "jtest"});
  group_cmd("line", "projective line", {"enumerate", "graph", "diameter", "induced"});
  group_cmd("chains", "chain geometries", {"list", "map"});
  CLI::App* suite = app.add_subcommand("suite", "run a verification suite");
  suite->add_option("name", o.suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  common(suite);
  suite->callback([&] { group = "suite"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  const bool max_len_given =
      std::any_of(max_len_opts.begin(), max_len_opts.end(), [](const CLI::Option* opt) { return opt->count() > 0; });
  if (group == "sym" && cmd == "verify" && !max_len_given) o.max_len = 8;
  try {
    return run(group, cmd, o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
