#pragma once

#include "hil/core/model.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hil::environment {

enum class Terrain : std::uint8_t { OnRoad, OffRoad };

inline const std::vector<std::string>& terrain_labels() {
  static const std::vector<std::string> labels{"onRoad", "offRoad"};
  return labels;
}

/// One section of the journey.
struct RoutePoint {
  int obstacle = 0;   // difficulty to overcome; also the hazard size met on this section
  int distance = 1;   // distance-units; travel time follows from speed
  Terrain terrain = Terrain::OnRoad;
  int curvature = 0;
  friend bool operator==(const RoutePoint&, const RoutePoint&) = default;
};

struct RouteLimits {
  int max_obstacle = 3;
  int max_curvature = 3;
  int max_hazard = 3;
  int max_distance = 50;
  friend bool operator==(const RouteLimits&, const RouteLimits&) = default;
};

inline void validate(const RoutePoint& p, const RouteLimits& lim) {
  if (p.distance < 1 || p.distance > lim.max_distance)
    throw std::invalid_argument("route distance must be in [1, " + std::to_string(lim.max_distance) + "]");
  if (p.obstacle < 0 || p.obstacle > lim.max_obstacle)
    throw std::invalid_argument("route obstacle must be in [0, " + std::to_string(lim.max_obstacle) + "]");
  if (p.curvature < 0 || p.curvature > lim.max_curvature)
    throw std::invalid_argument("route curvature must be in [0, " + std::to_string(lim.max_curvature) + "]");
}

/// Additive difficulty of a section, fed to the terrain fatigue sub-model.
inline int difficulty(const RoutePoint& p) { return p.obstacle + p.curvature; }

struct Route {
  std::vector<RoutePoint> points;
  std::size_t cursor = 0;  // index of the section being driven; == size() when the journey is over
  int progress = 0;        // distance already covered inside points[cursor]

  bool complete() const { return cursor >= points.size(); }
  const RoutePoint& current() const { return points.at(cursor); }
  friend bool operator==(const Route&, const Route&) = default;
};

/// Covers `distance_covered` units: fully covered sections are passed, the
/// remainder is carried into the next one. Distance beyond the end is dropped.
inline Route advance_route(Route r, int distance_covered) {
  if (distance_covered < 0) throw std::invalid_argument("distance covered must be non-negative");
  if (r.points.empty()) throw std::invalid_argument("route has no points");
  int left = distance_covered;
  while (!r.complete() && left > 0) {
    const int remaining = r.current().distance - r.progress;
    if (left < remaining) {
      r.progress += left;
      left = 0;
    } else {
      left -= remaining;
      r.progress = 0;
      ++r.cursor;
    }
  }
  return r;
}

struct Hazard {
  bool present = false;
  int size = 0;  // larger hazards are easier to perceive
  friend bool operator==(const Hazard&, const Hazard&) = default;
};

/// Maps a drawn hazard value to a Hazard; 0 means none.
inline Hazard gen_hazard(int draw, int max_hazard) {
  if (draw < 0 || draw > max_hazard) throw std::out_of_range("hazard draw outside its domain");
  return Hazard{draw > 0, draw};
}

/// Per-field value sets for a nondeterministic route.
struct RouteDomains {
  std::vector<int> obstacle{0};
  std::vector<int> distance{1};
  std::vector<Terrain> terrain{Terrain::OnRoad};
  std::vector<int> curvature{0};
  friend bool operator==(const RouteDomains&, const RouteDomains&) = default;
};

inline std::uint64_t route_space_size(std::size_t length, const RouteDomains& d) {
  const std::uint64_t per_point = static_cast<std::uint64_t>(d.obstacle.size()) * d.distance.size() *
                                  d.terrain.size() * d.curvature.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (per_point != 0 && total > UINT64_MAX / per_point) return UINT64_MAX;
    total *= per_point;
  }
  return total;
}

/// Model variables holding one route point.
struct RoutePointVars {
  Var obstacle, distance, terrain, curvature;
};

/// Declares one initial-value ChoicePoint per field of every route point, so
/// the engine branches over the whole product space of routes.
inline std::vector<ChoiceRef> nondet_route(ModelBuilder& b, const std::vector<RoutePointVars>& vars,
                                           const RouteDomains& domains, EnumId terrain_enum,
                                           std::uint64_t path_ceiling) {
  if (vars.empty()) throw ModelError("nondet route needs at least one point");
  if (route_space_size(vars.size(), domains) > path_ceiling)
    throw ModelError("route space exceeds the path ceiling");
  auto ints = [](const std::vector<int>& xs) {
    std::vector<Value> out;
    for (int x : xs) out.emplace_back(std::int64_t{x});
    return out;
  };
  std::vector<Value> terrains;
  for (Terrain t : domains.terrain) terrains.emplace_back(Label{terrain_enum, static_cast<std::uint32_t>(t)});

  std::vector<ChoiceRef> out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string p = "route.seg" + std::to_string(i) + ".";
    out.push_back(b.initial_choice(p + "obstacle", vars[i].obstacle, ints(domains.obstacle)));
    out.push_back(b.initial_choice(p + "distance", vars[i].distance, ints(domains.distance)));
    out.push_back(b.initial_choice(p + "terrain", vars[i].terrain, terrains));
    out.push_back(b.initial_choice(p + "curvature", vars[i].curvature, ints(domains.curvature)));
  }
  return out;
}

} // namespace hil::environment
