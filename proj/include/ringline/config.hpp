#pragma once

// JSON configuration files for rings, maps and subfields.
//
// Ring:     {"kind": "zmod", "n": 6}
//           {"kind": "gf", "p": 2, "k": 2, "modulus": [1, 1]}
//           {"kind": "matrix", "base": <ring>, "size": 2}
//           {"kind": "product", "factors": [<ring>, ...]}
//           {"kind": "bm", "base": <ring>, "mdim": 3, "table": "exterior" | [[i, j, k, coeff], ...]}
//           optional "cap": maximum number of elements
// Map:      {"kind": "identity" | "transpose" | "regular_rep"}
//           {"kind": "table", "entries": [["a", "a'"], ...]}
//           {"kind": "product", "factors": [<map>, ...]}
//           {"kind": "herzer", "rows": [["1", "0", "0"], ...]}
//           {"kind": "compose", "inner": <map>, "outer": <map>, "middle": <ring>}
//           optional top-level "codomain": <ring> (default: the domain) and "label"
// Subfield: {"generators": ["name", ...]}

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ringline/jordan.hpp"
#include "ringline/rings.hpp"

namespace ringline {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MapConfig {
  MapSpec spec;
  std::optional<RingSpec> codomain;
  std::optional<std::string> label;
};

struct SubfieldConfig {
  std::vector<std::string> generators;
};

RingSpec parse_ring_config(std::string_view text);
MapConfig parse_map_config(std::string_view text);
SubfieldConfig parse_subfield_config(std::string_view text);

/// Reads a whole file; throws ConfigError when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace ringline
