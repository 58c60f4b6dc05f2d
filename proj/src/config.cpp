#include "ringline/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ringline {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::uint32_t uint_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 0xffffffffULL)
    throw ConfigError(std::string("field \"") + key + "\" must be a non-negative integer");
  return v.get<std::uint32_t>();
}

std::string string_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw ConfigError("expected an element name, got " + v.dump());
}

RingSpec ring_from(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  RingSpec s;
  if (kind == "zmod") {
    s = RingSpec::zmod(uint_field(j, "n"));
  } else if (kind == "gf") {
    const std::uint32_t p = uint_field(j, "p");
    const std::uint32_t k = j.contains("k") ? uint_field(j, "k") : 1;
    if (k == 1 && !j.contains("modulus")) {
      s = RingSpec::gf(p);
    } else {
      std::vector<std::uint32_t> modulus;
      for (const auto& c : field(j, "modulus")) modulus.push_back(c.get<std::uint32_t>());
      s = RingSpec::gf(p, k, modulus);
    }
  } else if (kind == "matrix") {
    s = RingSpec::matrix(ring_from(field(j, "base")), uint_field(j, "size"));
  } else if (kind == "product") {
    std::vector<RingSpec> factors;
    for (const auto& f : field(j, "factors")) factors.push_back(ring_from(f));
    s = RingSpec::product(std::move(factors));
  } else if (kind == "bm") {
    RingSpec base = ring_from(field(j, "base"));
    const json& table = field(j, "table");
    if (table.is_string()) {
      if (table.get<std::string>() != "exterior") throw ConfigError("unknown bm table \"" + table.get<std::string>() + "\"");
      s = RingSpec::exterior(std::move(base));
      if (j.contains("mdim") && uint_field(j, "mdim") != 3) throw ConfigError("exterior table needs mdim 3");
    } else {
      std::vector<RingSpec::Product> products;
      for (const auto& row : table) {
        if (!row.is_array() || row.size() != 4) throw ConfigError("bm table rows are [i, j, k, coeff]");
        products.push_back({row[0].get<std::uint32_t>(), row[1].get<std::uint32_t>(), row[2].get<std::uint32_t>(),
                            row[3].get<Coeff>()});
      }
      s = RingSpec::bm(std::move(base), uint_field(j, "mdim"), std::move(products));
    }
  } else {
    throw ConfigError("unknown ring kind \"" + kind + "\"");
  }
  if (j.contains("cap")) s.cap = field(j, "cap").get<std::size_t>();
  return s;
}

MapSpec map_from(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "identity") return MapSpec::identity();
  if (kind == "transpose") return MapSpec::transpose();
  if (kind == "regular_rep") return MapSpec::regular_rep();
  if (kind == "table") {
    std::vector<std::pair<std::string, std::string>> entries;
    for (const auto& e : field(j, "entries")) {
      if (!e.is_array() || e.size() != 2) throw ConfigError("table entries are [element, image]");
      entries.emplace_back(string_value(e[0]), string_value(e[1]));
    }
    return MapSpec::from_table(std::move(entries));
  }
  if (kind == "product") {
    std::vector<MapSpec> parts;
    for (const auto& f : field(j, "factors")) parts.push_back(map_from(f));
    return MapSpec::product(std::move(parts));
  }
  if (kind == "herzer") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : field(j, "rows")) {
      std::vector<std::string> r;
      for (const auto& v : row) r.push_back(string_value(v));
      rows.push_back(std::move(r));
    }
    return MapSpec::herzer(std::move(rows));
  }
  if (kind == "compose") {
    std::optional<RingSpec> middle;
    if (j.contains("middle")) middle = ring_from(j.at("middle"));
    return MapSpec::compose(map_from(field(j, "inner")), map_from(field(j, "outer")), middle);
  }
  throw ConfigError("unknown map kind \"" + kind + "\"");
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

template <class Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
}

}  // namespace

RingSpec parse_ring_config(std::string_view text) {
  json j = parse_json(text);
  return guarded([&] { return ring_from(j); });
}

MapConfig parse_map_config(std::string_view text) {
  json j = parse_json(text);
  return guarded([&] {
    MapConfig c;
    c.spec = map_from(j);
    if (j.contains("codomain")) c.codomain = ring_from(j.at("codomain"));
    if (j.contains("label")) c.label = j.at("label").get<std::string>();
    return c;
  });
}

SubfieldConfig parse_subfield_config(std::string_view text) {
  json j = parse_json(text);
  return guarded([&] {
    SubfieldConfig c;
    for (const auto& g : field(j, "generators")) c.generators.push_back(string_value(g));
    return c;
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace ringline
