#pragma once

// Named verification suites over the preset corpus or user configs.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringline/config.hpp"
#include "ringline/presets.hpp"
#include "ringline/report.hpp"

namespace ringline {

/// User configs replacing the corpus: a ring alone drives the ring-level
/// suites; a ring with a map drives the map-level suites; subfields (in the
/// domain and codomain) drive the chains suite.
struct SuiteInputs {
  std::optional<RingSpec> ring;
  std::optional<MapConfig> map;
  std::optional<SubfieldConfig> subfield, subfield_prime;
  std::vector<std::pair<std::string, std::string>> config_digests;
  SweepBudget budget;
  std::size_t max_len = 3;
};

const std::vector<std::string>& suite_names();

/// Runs one suite ("all" runs every suite). Throws std::invalid_argument for
/// unknown names and ConfigError/RingError for unusable configs.
RunReport run_suite(const std::string& name, std::uint64_t seed, const SuiteInputs& inputs = {});

}  // namespace ringline
