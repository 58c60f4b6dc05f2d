#include "ringline/report.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iomanip>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace ringline {

std::string to_string(Mode mode) { return mode == Mode::exhaustive ? "exhaustive" : "sampled"; }

unsigned thread_count() {
  if (const char* env = std::getenv("RINGLINE_THREADS")) {
    const long value = std::strtol(env, nullptr, 10);
    if (value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
}

namespace {

std::uint64_t checked_power(std::uint64_t base, std::size_t exponent, std::uint64_t limit) {
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > limit / base) return limit + 1;
    result *= base;
  }
  return result;
}

}  // namespace

SweepOutcome sweep_words(std::uint32_t alphabet, std::size_t max_length, const SweepBudget& budget,
                         const std::function<bool(std::span<const std::uint32_t>)>& holds) {
  SweepOutcome out;
  std::mt19937_64 rng(budget.seed);
  for (std::size_t length = 0; length <= max_length && !out.first_failure; ++length) {
    const std::uint64_t count = checked_power(alphabet, length, budget.budget);
    if (count <= budget.budget) {
      if (length == 0) {
        ++out.cases;
        if (!holds({})) out.first_failure = std::vector<std::uint32_t>{};
        continue;
      }
      // One task per first letter; keep the lexicographically first failure.
      std::vector<std::optional<std::vector<std::uint32_t>>> failures(alphabet);
      std::atomic<std::uint64_t> visited{0};
      parallel_for(alphabet, [&](std::size_t first) {
        std::vector<std::uint32_t> word(length);
        word[0] = static_cast<std::uint32_t>(first);
        std::uint64_t local = 0;
        for_each_word(alphabet, length - 1, [&](std::span<const std::uint32_t> tail) {
          if (failures[first]) return;
          std::copy(tail.begin(), tail.end(), word.begin() + 1);
          ++local;
          if (!holds(word)) failures[first] = word;
        });
        visited += local;
      });
      out.cases += visited;
      for (auto& f : failures) {
        if (f) {
          out.first_failure = std::move(f);
          break;
        }
      }
    } else {
      out.mode = Mode::sampled;
      std::uniform_int_distribution<std::uint32_t> letter(0, alphabet - 1);
      std::vector<std::vector<std::uint32_t>> samples(budget.samples, std::vector<std::uint32_t>(length));
      for (auto& s : samples)
        for (auto& x : s) x = letter(rng);
      std::vector<char> ok(samples.size(), 1);
      parallel_for(samples.size(), [&](std::size_t i) { ok[i] = holds(samples[i]) ? 1 : 0; });
      out.cases += samples.size();
      for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!ok[i]) {
          out.first_failure = samples[i];
          break;
        }
      }
    }
  }
  return out;
}

std::size_t RunReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const CheckResult& r) { return !r.pass; }));
}

std::string RunReport::serialize() const {
  using nlohmann::ordered_json;
  std::ostringstream out;
  ordered_json header;
  header["suite"] = suite;
  header["seed"] = seed;
  ordered_json digests = ordered_json::object();
  for (const auto& [name, value] : config_digests) digests[name] = value;
  header["configs"] = digests;
  header["checks"] = records.size();
  header["failures"] = failures();
  out << header.dump() << '\n';
  std::vector<const CheckResult*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckResult* a, const CheckResult* b) { return a->name < b->name; });
  for (const CheckResult* r : sorted) {
    ordered_json line;
    line["check"] = r->name;
    line["anchor"] = r->anchor;
    line["mode"] = to_string(r->mode);
    line["status"] = r->pass ? "pass" : "fail";
    line["cases"] = r->cases;
    if (!r->witness.empty()) line["witness"] = r->witness;
    if (!r->note.empty()) line["note"] = r->note;
    out << line.dump() << '\n';
  }
  return out.str();
}

std::string RunReport::summary() const {
  std::ostringstream out;
  std::size_t width = 0;
  for (const auto& r : records) width = std::max(width, r.name.size());
  std::vector<const CheckResult*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckResult* a, const CheckResult* b) { return a->name < b->name; });
  for (const CheckResult* r : sorted) {
    out << (r->pass ? "PASS " : "FAIL ") << std::left << std::setw(static_cast<int>(width)) << r->name
        << "  " << std::setw(10) << to_string(r->mode) << ' ' << r->cases;
    if (!r->witness.empty()) out << "  witness: " << r->witness;
    if (!r->note.empty()) out << "  [" << r->note << ']';
    out << '\n';
  }
  out << records.size() - failures() << '/' << records.size() << " checks passed\n";
  return out.str();
}

std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

}  // namespace ringline
