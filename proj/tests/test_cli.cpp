#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "ringline/config.hpp"
#include "ringline/presets.hpp"
#include "ringline/suites.hpp"

using namespace ringline;

TEST_CASE("ring configs") {
  CHECK(build_ring(parse_ring_config(R"({"kind": "zmod", "n": 6})"))->size() == 6);
  RingSpec g = parse_ring_config(R"({"kind": "gf", "p": 2, "k": 2, "modulus": [1, 1]})");
  CHECK(g.describe() == gf4().describe());
  RingSpec m = parse_ring_config(R"({"kind": "matrix", "base": {"kind": "gf", "p": 2}, "size": 2})");
  CHECK(build_ring(m)->size() == 16);
  RingSpec p = parse_ring_config(R"({"kind": "product", "factors": [{"kind": "zmod", "n": 2}, {"kind": "zmod", "n": 3}]})");
  CHECK(build_ring(p)->size() == 6);
  RingSpec e = parse_ring_config(R"({"kind": "bm", "base": {"kind": "gf", "p": 3}, "mdim": 3, "table": "exterior"})");
  RingSpec t = parse_ring_config(
      R"({"kind": "bm", "base": {"kind": "gf", "p": 3}, "mdim": 3, "table": [[1, 2, 3, 1], [2, 1, 3, -1]]})");
  CHECK(e.describe() == t.describe());
  CHECK(e.describe() == exterior_over(RingSpec::gf(3)).describe());
  CHECK(parse_ring_config(R"({"kind": "zmod", "n": 6, "cap": 10})").cap == 10);
}

TEST_CASE("malformed ring configs") {
  CHECK_THROWS_AS(parse_ring_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_ring_config(R"({"n": 4})"), ConfigError);
  CHECK_THROWS_AS(parse_ring_config(R"({"kind": "zmod"})"), ConfigError);
  CHECK_THROWS_AS(parse_ring_config(R"({"kind": "zmod", "n": -2})"), ConfigError);
  CHECK_THROWS_AS(parse_ring_config(R"({"kind": "quaternion"})"), ConfigError);
  CHECK_THROWS_AS(parse_ring_config(R"({"kind": "bm", "base": {"kind": "gf", "p": 3}, "table": "wedge"})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_ring_config(R"({"kind": "bm", "base": {"kind": "gf", "p": 3}, "mdim": 3, "table": [[1, 2]]})"),
                  ConfigError);
  CHECK_THROWS_AS(read_file("/nonexistent/ring.json"), ConfigError);
}

TEST_CASE("map configs") {
  MapConfig id = parse_map_config(R"({"kind": "identity"})");
  CHECK(id.spec.kind == MapSpec::Kind::identity);
  CHECK(!id.codomain);
  MapConfig red = parse_map_config(
      R"({"kind": "table", "label": "r", "entries": [["0","0"],["1","1"],["2","0"],["3","1"]],
          "codomain": {"kind": "zmod", "n": 2}})");
  REQUIRE(red.codomain);
  CHECK(red.label == "r");
  JordanMap m = build_map(red.spec, build_ring(RingSpec::zmod(4)), build_ring(*red.codomain));
  CHECK(m.homomorphism);
  MapConfig h = parse_map_config(R"({"kind": "herzer", "rows": [["1","0","0"],["0","0","1"],["0","1","0"]]})");
  RingPtr ext = build_ring(exterior_over(RingSpec::gf(3)));
  CHECK(build_map(h.spec, ext, ext).proper());
  MapConfig pr = parse_map_config(R"({"kind": "product", "factors": [{"kind": "identity"}, {"kind": "transpose"}]})");
  CHECK(pr.spec.parts.size() == 2);
  MapConfig c = parse_map_config(
      R"({"kind": "compose", "inner": {"kind": "transpose"}, "outer": {"kind": "transpose"}})");
  RingPtr m2 = build_ring(RingSpec::matrix(RingSpec::gf(2), 2));
  JordanMap cc = build_map(c.spec, m2, m2);
  for (Elem a = 0; a < m2->size(); ++a) CHECK(cc(a) == a);
  CHECK_THROWS_AS(parse_map_config(R"({"kind": "frobenius"})"), ConfigError);
  CHECK_THROWS_AS(parse_map_config(R"({"kind": "table", "entries": [["0"]]})"), ConfigError);
}

TEST_CASE("subfield configs") {
  CHECK(parse_subfield_config(R"j({"generators": ["(0,1)"]})j").generators == std::vector<std::string>{"(0,1)"});
  CHECK_THROWS_AS(parse_subfield_config(R"({"gens": []})"), ConfigError);
}

TEST_CASE("suite names and errors") {
  const auto& names = suite_names();
  for (const char* n : {"symbolic", "prop25", "jordan", "thm35", "nalpha", "line", "harmonic", "chains",
                        "paper-examples", "all"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  CHECK_THROWS_AS(run_suite("nonsense", 0), std::invalid_argument);
  SuiteInputs in;
  in.map = parse_map_config(R"({"kind": "identity"})");
  CHECK_THROWS(run_suite("line", 0, in));
}

TEST_CASE("reports serialize as line-delimited JSON") {
  RunReport r = run_suite("symbolic", 7);
  CHECK(r.failures() == 0);
  std::istringstream lines(r.serialize());
  std::string line;
  std::size_t count = 0;
  bool saw_header = false;
  while (std::getline(lines, line)) {
    auto j = nlohmann::json::parse(line);
    if (j.contains("suite")) {
      saw_header = true;
      CHECK(j["suite"] == "symbolic");
      CHECK(j["seed"] == 7);
    } else {
      ++count;
      CHECK(j["status"] == "pass");
    }
  }
  CHECK(saw_header);
  CHECK(count == r.records.size());
  CHECK(r.serialize() == run_suite("symbolic", 7).serialize());
  CHECK(r.summary().find("checks passed") != std::string::npos);
}

TEST_CASE("sampled checks depend only on the seed") {
  SuiteInputs in;
  in.ring = RingSpec::zmod(4);
  in.map = parse_map_config(R"({"kind": "identity"})");
  in.budget.budget = 10;
  in.budget.samples = 50;
  RunReport a = run_suite("harmonic", 3, in), b = run_suite("harmonic", 3, in);
  CHECK(a.serialize() == b.serialize());
  CHECK(a.failures() == 0);
  bool sampled = false;
  for (const auto& rec : a.records) sampled = sampled || rec.mode == Mode::sampled;
  CHECK(sampled);
}

TEST_CASE("user configs drive the ring and map suites") {
  SuiteInputs in;
  in.ring = parse_ring_config(R"({"kind": "zmod", "n": 4})");
  in.map = parse_map_config(R"({"kind": "table", "entries": [["0","0"],["1","1"],["2","0"],["3","1"]],
                                "codomain": {"kind": "zmod", "n": 2}})");
  in.config_digests = {{"ring", digest("x")}};
  for (const char* s : {"prop25", "jordan", "thm35", "nalpha", "line"}) {
    RunReport r = run_suite(s, 0, in);
    CAPTURE(s);
    CHECK(r.failures() == 0);
    CHECK(!r.records.empty());
    CHECK(r.config_digests == in.config_digests);
  }
  in.subfield = parse_subfield_config(R"({"generators": ["1"]})");
  CHECK_THROWS(run_suite("chains", 0, in));
}

TEST_CASE("digest is FNV-1a") {
  CHECK(digest("") == "cbf29ce484222325");
  CHECK(digest("a") == "af63dc4c8601ec8c");
}
