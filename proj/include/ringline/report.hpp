#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ringline {

enum class Mode { exhaustive, sampled };

std::string to_string(Mode mode);

/// Outcome of one verification check.
///
/// `cases` counts the individual instances examined (words, pairs,
/// quadruples ...). `witness` is empty on success and holds a readable
/// counterexample on failure. `note` carries observations that are not
/// pass/fail (e.g. injectivity of an induced map).
struct CheckResult {
  std::string name;
  std::string anchor;
  Mode mode = Mode::exhaustive;
  bool pass = true;
  std::uint64_t cases = 0;
  std::string witness;
  std::string note;

  void fail(std::string w) {
    if (pass) witness = std::move(w);
    pass = false;
  }
};

/// Limits for exhaustive sweeps. A sweep whose case count exceeds `budget`
/// is replaced by `samples` uniformly random cases drawn from a generator
/// seeded with `seed`.
struct SweepBudget {
  std::uint64_t budget = 10'000'000;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
};

/// Number of worker threads: RINGLINE_THREADS if set and positive,
/// otherwise the hardware concurrency (at least 1).
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Bodies must
/// only write to per-index state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Enumerates every word of exactly `length` letters over the alphabet
/// {0, ..., alphabet-1} in lexicographic order.
template <class Fn>
void for_each_word(std::uint32_t alphabet, std::size_t length, Fn&& fn) {
  std::vector<std::uint32_t> word(length, 0);
  if (length == 0) {
    fn(std::span<const std::uint32_t>(word));
    return;
  }
  if (alphabet == 0) return;
  while (true) {
    fn(std::span<const std::uint32_t>(word));
    std::size_t pos = length;
    while (pos > 0) {
      --pos;
      if (++word[pos] < alphabet) break;
      word[pos] = 0;
      if (pos == 0) return;
    }
  }
}

/// Result of a predicate sweep over words.
struct SweepOutcome {
  Mode mode = Mode::exhaustive;
  std::uint64_t cases = 0;
  std::optional<std::vector<std::uint32_t>> first_failure;
};

/// Checks `holds` on every word of length 0..max_length over an alphabet of
/// the given size. A length whose word count exceeds budget.budget is
/// replaced by budget.samples seeded uniform samples of that length. The
/// predicate must be safe to call concurrently; exhaustive lengths are split
/// across threads by first letter. The reported failure is the first one in
/// (length, lexicographic) order, or in sample order for sampled lengths.
SweepOutcome sweep_words(std::uint32_t alphabet, std::size_t max_length, const SweepBudget& budget,
                         const std::function<bool(std::span<const std::uint32_t>)>& holds);

/// A full verification run: records sorted by name, plus run metadata.
struct RunReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config_digests;
  std::vector<CheckResult> records;

  std::size_t failures() const;
  /// Line-delimited JSON; byte-identical for identical inputs and seed.
  std::string serialize() const;
  /// Short human-readable table.
  std::string summary() const;
};

/// 64-bit FNV-1a digest, rendered as 16 hex digits.
std::string digest(std::string_view text);

}  // namespace ringline
