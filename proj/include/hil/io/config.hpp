#pragma once

// Flat `key = value` scenario configuration. `#` starts a comment.
//
//   scenario       = ideal                      base scenario (only with no other base)
//   name           = my-run
//   bound          = 100
//   controlMode    = Engaged | Manual | nondet
//   fatigueSource  = calculated | probed
//   speed          = calculated | fixed
//   route          = (0,4,offRoad,0) (1,5,onRoad,2) ...   obstacle,distance,terrain,curvature
//   route          = nondet
//   route.length   = 5                          nondet route only, as are the four below
//   route.obstacle = 0, 1
//   route.distance = 6, 9
//   route.terrain  = onRoad, offRoad
//   route.curvature = 0
//   operators      = Max, Min, Sum, RoundedMean
//   inputMode      = GamePad | Speech | MultiModal
//   plus the integer overrides listed in apply_config.

#include "hil/scenarios/scenario.hpp"

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hil::io {

class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string& source, std::size_t line, const std::string& msg)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

struct ConfigEntry {
  std::size_t line = 0;
  std::string key;
  std::string value;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || p != end || s.empty()) return std::nullopt;
  return v;
}

template <class E>
std::optional<E> parse_label(std::string_view s, const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == s) return static_cast<E>(i);
  return std::nullopt;
}

inline std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
  return out;
}

} // namespace detail

inline std::vector<ConfigEntry> parse_config(std::istream& in, const std::string& source = "<config>") {
  std::vector<ConfigEntry> out;
  std::string raw;
  std::size_t n = 0;
  std::map<std::string, std::size_t> seen;
  while (std::getline(in, raw)) {
    ++n;
    const auto hash = raw.find('#');
    const std::string line = detail::trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(source, n, "expected `key = value`");
    ConfigEntry e{n, detail::trim(std::string_view(line).substr(0, eq)), detail::trim(std::string_view(line).substr(eq + 1))};
    if (e.key.empty()) throw ConfigError(source, n, "missing key");
    if (e.value.empty()) throw ConfigError(source, n, "missing value for " + e.key);
    if (auto [it, fresh] = seen.emplace(e.key, n); !fresh)
      throw ConfigError(source, n, "duplicate key " + e.key + " (first on line " + std::to_string(it->second) + ")");
    out.push_back(std::move(e));
  }
  return out;
}

/// `(o,d,t,c) (o,d,t,c) ...`; whitespace inside tuples is ignored.
inline std::vector<scenarios::RoutePoint> parse_route_literal(std::string_view s, const std::string& source,
                                                              std::size_t line) {
  std::vector<scenarios::RoutePoint> out;
  std::size_t i = 0;
  auto fail = [&](const std::string& m) -> ConfigError { return ConfigError(source, line, "route: " + m); };
  while (i < s.size()) {
    if (s[i] == ' ' || s[i] == '\t' || s[i] == ',') {
      ++i;
      continue;
    }
    if (s[i] != '(') throw fail("expected '(' at column " + std::to_string(i + 1));
    const auto close = s.find(')', i);
    if (close == std::string_view::npos) throw fail("unterminated tuple");
    const auto fields = detail::split_list(s.substr(i + 1, close - i - 1));
    if (fields.size() != 4) throw fail("tuple needs 4 fields (obstacle,distance,terrain,curvature)");
    const auto o = detail::parse_int(fields[0]);
    const auto d = detail::parse_int(fields[1]);
    const auto t = detail::parse_label<environment::Terrain>(fields[2], environment::terrain_labels());
    const auto c = detail::parse_int(fields[3]);
    if (!o || !d || !c) throw fail("non-integer field in tuple " + std::to_string(out.size() + 1));
    if (!t) throw fail("unknown terrain '" + fields[2] + "' (expected " + detail::join(environment::terrain_labels()) + ")");
    if (*d < 1) throw fail("distance must be at least 1 in tuple " + std::to_string(out.size() + 1));
    out.push_back({static_cast<int>(*o), static_cast<int>(*d), *t, static_cast<int>(*c)});
    i = close + 1;
  }
  if (out.empty()) throw fail("no route points");
  return out;
}

/// Applies entries on top of `base`. Unknown keys and malformed values throw
/// ConfigError carrying the offending line.
inline scenarios::ScenarioConfig apply_config(const std::vector<ConfigEntry>& entries, scenarios::ScenarioConfig base,
                                              const std::string& source = "<config>") {
  using namespace scenarios;
  auto& p = base.params;
  const std::map<std::string, std::function<void(int)>> int_keys = {
      {"baseSeparation", [&](int v) { base.base_separation = v; }},
      {"maxSpeed", [&](int v) { p.max_speed = v; }},
      {"leadSpeed", [&](int v) { p.lead_speed = v; }},
      {"initialSpeed", [&](int v) { p.initial_speed = v; }},
      {"initialGap", [&](int v) { p.initial_gap = v; }},
      {"maxGap", [&](int v) { p.max_gap = v; }},
      {"fast", [&](int v) { p.reaction.fast = v; }},
      {"okay", [&](int v) { p.reaction.okay = v; }},
      {"slow", [&](int v) { p.reaction.slow = v; }},
      {"nFactor", [&](int v) { p.reaction.n_factor = v; }},
      {"tFactor", [&](int v) { p.reaction.t_factor = v; }},
      {"eFactor", [&](int v) { p.reaction.e_factor = v; }},
      {"tiredAfter", [&](int v) { p.fatigue.tired_after = v; }},
      {"exhaustedAfter", [&](int v) { p.fatigue.exhausted_after = v; }},
      {"difficultyStep", [&](int v) { p.fatigue.difficulty_step = v; }},
      {"maxHP", [&](int v) { p.perception.max_hp = v; }},
      {"tiredSeparationPercent", [&](int v) { p.separation.tired_percent = v; }},
      {"exhaustedSeparationPercent", [&](int v) { p.separation.exhausted_percent = v; }},
      {"maxObstacle", [&](int v) { p.limits.max_obstacle = v; }},
      {"maxCurvature", [&](int v) { p.limits.max_curvature = v; }},
      {"maxHazard", [&](int v) { p.limits.max_hazard = v; }},
      {"maxDistance", [&](int v) { p.limits.max_distance = v; }},
  };

  std::optional<std::size_t> route_key_line;  // first route.* key
  std::optional<NondetRoute> nondet;
  if (const auto* n = std::get_if<NondetRoute>(&base.route)) nondet = *n;
  bool route_is_nondet = nondet.has_value();

  auto int_list = [&](const ConfigEntry& e) {
    std::vector<int> out;
    for (const auto& f : detail::split_list(e.value)) {
      const auto v = detail::parse_int(f);
      if (!v) throw ConfigError(source, e.line, e.key + ": '" + f + "' is not an integer");
      out.push_back(static_cast<int>(*v));
    }
    if (out.empty()) throw ConfigError(source, e.line, e.key + ": empty list");
    return out;
  };

  for (const auto& e : entries) {
    if (e.key == "scenario") continue;  // resolved by load_config
    if (auto it = int_keys.find(e.key); it != int_keys.end()) {
      const auto v = detail::parse_int(e.value);
      if (!v || *v < INT32_MIN || *v > INT32_MAX) throw ConfigError(source, e.line, e.key + ": expected an integer");
      it->second(static_cast<int>(*v));
    } else if (e.key == "name") {
      for (char c : e.value)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.'))
          throw ConfigError(source, e.line, "name may contain only letters, digits, '-', '_' and '.'");
      base.name = e.value;
    } else if (e.key == "bound") {
      const auto v = detail::parse_int(e.value);
      if (!v || *v < 1) throw ConfigError(source, e.line, "bound: expected a positive integer");
      base.bound = static_cast<std::size_t>(*v);
    } else if (e.key == "controlMode") {
      if (e.value == "nondet") {
        base.control_mode.reset();
      } else if (auto m = detail::parse_label<AccStatus>(e.value, acc::status_labels())) {
        base.control_mode = *m;
      } else {
        throw ConfigError(source, e.line, "controlMode: expected Engaged, Manual or nondet");
      }
    } else if (e.key == "fatigueSource") {
      if (e.value == "calculated") base.fatigue_source = FatigueSource::Calculated;
      else if (e.value == "probed") base.fatigue_source = FatigueSource::Probed;
      else throw ConfigError(source, e.line, "fatigueSource: expected calculated or probed");
    } else if (e.key == "speed") {
      if (e.value == "calculated") base.speed = SpeedSource::Calculated;
      else if (e.value == "fixed") base.speed = SpeedSource::Fixed;
      else throw ConfigError(source, e.line, "speed: expected calculated or fixed");
    } else if (e.key == "inputMode") {
      const auto m = detail::parse_label<InputMode>(e.value, behaviour::input_mode_labels());
      if (!m) throw ConfigError(source, e.line, "inputMode: expected " + detail::join(behaviour::input_mode_labels()));
      p.input_mode = *m;
    } else if (e.key == "operators") {
      std::vector<IntegratorOp> ops;
      for (const auto& f : detail::split_list(e.value)) {
        const auto op = detail::parse_label<IntegratorOp>(f, behaviour::integrator_labels());
        if (!op) throw ConfigError(source, e.line, "operators: unknown operator '" + f + "'");
        ops.push_back(*op);
      }
      p.operators = ops;
    } else if (e.key == "route") {
      if (e.value == "nondet") {
        route_is_nondet = true;
        if (!nondet) nondet = NondetRoute{};
      } else {
        route_is_nondet = false;
        base.route = parse_route_literal(e.value, source, e.line);
      }
    } else if (e.key.rfind("route.", 0) == 0) {
      if (!route_key_line) route_key_line = e.line;
      if (!nondet) nondet = NondetRoute{};
      if (e.key == "route.length") {
        const auto v = detail::parse_int(e.value);
        if (!v || *v < 1) throw ConfigError(source, e.line, "route.length: expected a positive integer");
        nondet->length = static_cast<std::size_t>(*v);
      } else if (e.key == "route.obstacle") {
        nondet->domains.obstacle = int_list(e);
      } else if (e.key == "route.distance") {
        nondet->domains.distance = int_list(e);
        for (int d : nondet->domains.distance)
          if (d < 1) throw ConfigError(source, e.line, "route.distance: distance must be at least 1");
      } else if (e.key == "route.curvature") {
        nondet->domains.curvature = int_list(e);
      } else if (e.key == "route.terrain") {
        std::vector<environment::Terrain> ts;
        for (const auto& f : detail::split_list(e.value)) {
          const auto t = detail::parse_label<environment::Terrain>(f, environment::terrain_labels());
          if (!t) throw ConfigError(source, e.line, "route.terrain: unknown terrain '" + f + "'");
          ts.push_back(*t);
        }
        nondet->domains.terrain = ts;
      } else {
        throw ConfigError(source, e.line, "unknown key " + e.key);
      }
    } else {
      throw ConfigError(source, e.line, "unknown key " + e.key);
    }
  }

  if (route_key_line && !route_is_nondet)
    throw ConfigError(source, *route_key_line, "route.* domains need `route = nondet`");
  if (route_is_nondet) base.route = *nondet;

  try {
    base.validate();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(source, entries.empty() ? 0 : entries.back().line, ex.what());
  }
  return base;
}

inline std::optional<std::string> scenario_key(const std::vector<ConfigEntry>& entries) {
  for (const auto& e : entries)
    if (e.key == "scenario") return e.value;
  return std::nullopt;
}

/// Reads `path`. The base scenario is `base` if given, otherwise the file's
/// `scenario` key.
inline scenarios::ScenarioConfig load_config(const std::filesystem::path& path,
                                             std::optional<scenarios::ScenarioConfig> base = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open file");
  const auto entries = parse_config(in, path.string());
  if (const auto key = scenario_key(entries)) {
    std::size_t line = 0;
    for (const auto& e : entries)
      if (e.key == "scenario") line = e.line;
    auto named = scenarios::scenario_by_name(*key);
    if (!named) throw ConfigError(path.string(), line, "unknown scenario " + *key);
    if (base && base->name != named->name)
      throw ConfigError(path.string(), line, "scenario " + *key + " conflicts with " + base->name);
    base = std::move(named);
  }
  if (!base) throw ConfigError(path.string(), 0, "no base scenario: name one on the command line or set `scenario`");
  return apply_config(entries, std::move(*base), path.string());
}

inline scenarios::ScenarioConfig load_config_string(const std::string& text, scenarios::ScenarioConfig base) {
  std::istringstream in(text);
  return apply_config(parse_config(in), std::move(base));
}

} // namespace hil::io
