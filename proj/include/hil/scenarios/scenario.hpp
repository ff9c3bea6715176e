#pragma once

// The driver / ACC / route case study assembled into a three-model control
// loop, plus the three named scenario configurations.

#include "hil/core/engine.hpp"
#include "hil/models/acc.hpp"
#include "hil/models/behaviour.hpp"
#include "hil/models/environment.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hil::scenarios {

using acc::AccCommand;
using acc::AccStatus;
using behaviour::FatigueLevel;
using behaviour::InputMode;
using behaviour::IntegratorOp;
using environment::RoutePoint;
using environment::Terrain;

inline constexpr const char* kSeparationMaintained = "SeparationMaintained";
inline constexpr const char* kFatigueBounded = "FatigueBounded";

enum class FatigueSource : std::uint8_t { Calculated, Probed };
enum class SpeedSource : std::uint8_t { Calculated, Fixed };

struct NondetRoute {
  std::size_t length = 5;
  environment::RouteDomains domains;
  friend bool operator==(const NondetRoute&, const NondetRoute&) = default;
};

using RouteSpec = std::variant<std::vector<RoutePoint>, NondetRoute>;

/// Numeric defaults, all overridable from a config file.
struct Parameters {
  int max_speed = 10;
  int lead_speed = 6;
  std::optional<int> initial_speed;  // defaults to lead speed
  std::optional<int> initial_gap;    // defaults to the ACC preset for a rested driver
  int max_gap = 2000;
  InputMode input_mode = InputMode::GamePad;
  behaviour::ReactionTable reaction;
  behaviour::FatigueTable fatigue;
  behaviour::PerceptionTable perception;
  acc::SeparationPolicy separation;
  environment::RouteLimits limits;
  std::vector<IntegratorOp> operators{behaviour::kIntegratorOps.begin(), behaviour::kIntegratorOps.end()};
  friend bool operator==(const Parameters&, const Parameters&) = default;
};

struct ScenarioConfig {
  std::string name;
  RouteSpec route = std::vector<RoutePoint>{};
  std::optional<AccStatus> control_mode = AccStatus::Engaged;  // nullopt: drawn every iteration
  FatigueSource fatigue_source = FatigueSource::Calculated;
  SpeedSource speed = SpeedSource::Calculated;
  int base_separation = 10;
  std::size_t bound = 100;
  Parameters params;

  bool nondet_route() const { return std::holds_alternative<NondetRoute>(route); }
  std::size_t route_length() const {
    if (const auto* n = std::get_if<NondetRoute>(&route)) return n->length;
    return std::get<std::vector<RoutePoint>>(route).size();
  }
  int initial_speed() const { return params.initial_speed.value_or(params.lead_speed); }

  int initial_gap() const {
    if (params.initial_gap) return *params.initial_gap;
    return acc::fatigue_aware_preset(FatigueLevel::Normal, base_separation, params.lead_speed,
                                     params.input_mode, params.reaction, params.separation);
  }

  /// Throws std::invalid_argument on the first inconsistency.
  void validate() const {
    const auto& p = params;
    if (name.empty()) throw std::invalid_argument("scenario name is empty");
    if (bound < 1) throw std::invalid_argument("bound must be at least 1");
    if (base_separation < 1) throw std::invalid_argument("baseSeparation must be at least 1");
    if (p.max_speed < 1) throw std::invalid_argument("maxSpeed must be at least 1");
    if (p.lead_speed < 0 || p.lead_speed > p.max_speed) throw std::invalid_argument("leadSpeed must be in [0, maxSpeed]");
    if (initial_speed() < 0 || initial_speed() > p.max_speed)
      throw std::invalid_argument("initialSpeed must be in [0, maxSpeed]");
    if (p.max_gap < 1) throw std::invalid_argument("maxGap must be positive");
    if (initial_gap() < 0 || initial_gap() > p.max_gap) throw std::invalid_argument("initialGap must be in [0, maxGap]");
    if (p.perception.max_hp < 0) throw std::invalid_argument("maxHP must be non-negative");
    if (p.separation.tired_percent < 0 || p.separation.exhausted_percent < p.separation.tired_percent)
      throw std::invalid_argument("separation percentages must satisfy 0 <= tired <= exhausted");
    if (p.limits.max_obstacle < 0 || p.limits.max_curvature < 0 || p.limits.max_hazard < 0 || p.limits.max_distance < 1)
      throw std::invalid_argument("route limits out of range");
    if (p.operators.empty()) throw std::invalid_argument("integrator operator set is empty");
    for (std::size_t i = 0; i < p.operators.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (p.operators[i] == p.operators[j]) throw std::invalid_argument("duplicate integrator operator");
    p.reaction.validate();
    p.fatigue.validate();
    if (const auto* fixed = std::get_if<std::vector<RoutePoint>>(&route)) {
      if (fixed->empty()) throw std::invalid_argument("route is empty");
      for (const auto& pt : *fixed) environment::validate(pt, p.limits);
    } else {
      const auto& n = std::get<NondetRoute>(route);
      if (n.length < 1) throw std::invalid_argument("nondet route length must be at least 1");
      const auto& d = n.domains;
      if (d.obstacle.empty() || d.distance.empty() || d.terrain.empty() || d.curvature.empty())
        throw std::invalid_argument("nondet route domain is empty");
      for (int o : d.obstacle) environment::validate(RoutePoint{o, 1, Terrain::OnRoad, 0}, p.limits);
      for (int x : d.distance) environment::validate(RoutePoint{0, x, Terrain::OnRoad, 0}, p.limits);
      for (int c : d.curvature) environment::validate(RoutePoint{0, 1, Terrain::OnRoad, c}, p.limits);
    }
  }
  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Safety predicate -------------------------------------------------------------

struct SafetyLimits {
  int base_separation = 10;
  acc::SeparationPolicy separation;
  int max_hazard = 3;
  friend bool operator==(const SafetyLimits&, const SafetyLimits&) = default;
};

/// Lowest hazard perception that still notices a hazard of `size`.
inline int perception_floor(int size, int max_hazard) { return max_hazard + 1 - size; }

inline bool is_okay(FatigueLevel fatigue, int hp, int ssd, int gap, environment::Hazard hazard = {},
                    const SafetyLimits& lim = {}) {
  if (gap < ssd) return false;
  if (gap < acc::adaptive_separation(fatigue, lim.base_separation, lim.separation)) return false;
  if (hazard.present && hp < perception_floor(hazard.size, lim.max_hazard)) return false;
  return true;
}

// Model assembly ----------------------------------------------------------------

struct CaseStudyVars {
  std::vector<environment::RoutePointVars> route;  // E_S
  Var cursor, progress, env_lead;                  // E_S
  Var distance_covered;                            // E_I
  Var terrain, difficulty, hazard, lead_speed, journey_complete;  // E_O
  Var bi_terrain, bi_difficulty, bi_hazard, bi_complete, bi_mode, bi_command;  // B_I
  Var bo_fatigue, bo_hp, bo_rt, bo_input_mode, bo_mode, bo_command;            // B_O
  Var fatigue_op, input_mode, time_driven, fatigue, hp, reaction_time;         // B_S
  Var si_lead, si_fatigue, si_rt, si_input_mode, si_mode, si_command, si_complete;  // S_I
  Var so_speed, so_gap, so_status, so_command, so_desired, so_ssd;             // S_O
  Var speed, gap, status;                                                      // S_S
};

struct CaseStudyEnums {
  EnumId terrain, fatigue, input_mode, op, status, command;
};

struct CaseStudy {
  ScenarioConfig config;
  ModelHandle model;
  CaseStudyVars vars;
  CaseStudyEnums enums;
};

namespace detail {

template <class E>
std::vector<Value> labels_of(EnumId id, const std::vector<E>& xs) {
  std::vector<Value> out;
  for (E x : xs) out.emplace_back(Label{id, static_cast<std::uint32_t>(x)});
  return out;
}

struct DriverUpdate {
  int time_driven;
  FatigueLevel fatigue;
  int hp;
  int rt;
};

} // namespace detail

/// Builds and registers the model. Throws ModelError or std::invalid_argument.
inline CaseStudy build_case_study(const ScenarioConfig& cfg, std::uint64_t path_ceiling = 100'000'000) {
  cfg.validate();
  const Parameters& p = cfg.params;
  ModelBuilder b;
  CaseStudyEnums en{
      b.enumeration("Terrain", environment::terrain_labels()),
      b.enumeration("FatigueLevel", behaviour::fatigue_labels()),
      b.enumeration("InputMode", behaviour::input_mode_labels()),
      b.enumeration("IntegratorOp", behaviour::integrator_labels()),
      b.enumeration("AccStatus", acc::status_labels()),
      b.enumeration("AccCommand", acc::command_labels()),
  };
  auto ord = [](auto e) { return static_cast<std::uint32_t>(e); };
  CaseStudyVars v;

  // Initial route: the literal, or the first value of every nondet domain.
  std::vector<RoutePoint> route0;
  if (const auto* fixed = std::get_if<std::vector<RoutePoint>>(&cfg.route)) {
    route0 = *fixed;
  } else {
    const auto& n = std::get<NondetRoute>(cfg.route);
    route0.assign(n.length, RoutePoint{n.domains.obstacle.front(), n.domains.distance.front(),
                                       n.domains.terrain.front(), n.domains.curvature.front()});
  }
  const std::int64_t n_points = static_cast<std::int64_t>(route0.size());
  const int max_difficulty = p.limits.max_obstacle + p.limits.max_curvature;
  const int max_rt = p.reaction.max_reaction_time();
  constexpr std::int64_t kMaxTime = 1'000'000;

  const AccStatus mode0 = cfg.control_mode.value_or(AccStatus::Engaged);
  const FatigueLevel f0 = FatigueLevel::Normal;
  const int rt0 = behaviour::set_reaction_time(p.input_mode, f0, p.reaction);
  const int hp0 = behaviour::hazard_perception(f0, p.perception);
  const int speed0 = cfg.initial_speed();
  const int gap0 = cfg.initial_gap();
  const auto& first = route0.front();

  // E_S
  for (std::size_t i = 0; i < route0.size(); ++i) {
    const std::string s = "seg" + std::to_string(i) + ".";
    v.route.push_back({
        b.int_var(s + "obstacle", Group::EnvState, 0, p.limits.max_obstacle, route0[i].obstacle),
        b.int_var(s + "distance", Group::EnvState, 1, p.limits.max_distance, route0[i].distance),
        b.enum_var(s + "terrain", Group::EnvState, en.terrain, ord(route0[i].terrain)),
        b.int_var(s + "curvature", Group::EnvState, 0, p.limits.max_curvature, route0[i].curvature),
    });
  }
  v.cursor = b.int_var("cursor", Group::EnvState, 0, n_points, 0);
  v.progress = b.int_var("progress", Group::EnvState, 0, p.limits.max_distance, 0);
  v.env_lead = b.int_var("leadSpeed", Group::EnvState, 0, p.max_speed, p.lead_speed);
  // E_I
  v.distance_covered = b.int_var("distanceCovered", Group::EnvInput, 0, p.max_speed, 0);
  // E_O
  v.terrain = b.enum_var("terrain", Group::EnvOutput, en.terrain, ord(first.terrain));
  v.difficulty = b.int_var("difficulty", Group::EnvOutput, 0, max_difficulty, environment::difficulty(first));
  v.hazard = b.int_var("hazard", Group::EnvOutput, 0, p.limits.max_hazard,
                       std::min(first.obstacle, p.limits.max_hazard));
  v.lead_speed = b.int_var("leadSpeed", Group::EnvOutput, 0, p.max_speed, p.lead_speed);
  v.journey_complete = b.bool_var("journeyComplete", Group::EnvOutput, false);
  // B_I
  v.bi_terrain = b.enum_var("terrain", Group::BehInput, en.terrain, ord(first.terrain));
  v.bi_difficulty = b.int_var("difficulty", Group::BehInput, 0, max_difficulty, environment::difficulty(first));
  v.bi_hazard = b.int_var("hazard", Group::BehInput, 0, p.limits.max_hazard, std::min(first.obstacle, p.limits.max_hazard));
  v.bi_complete = b.bool_var("journeyComplete", Group::BehInput, false);
  v.bi_mode = b.enum_var("requestedMode", Group::BehInput, en.status, ord(mode0));
  v.bi_command = b.enum_var("driverCommand", Group::BehInput, en.command, ord(AccCommand::Maintain));
  // B_O
  v.bo_fatigue = b.enum_var("driverFatigue", Group::BehOutput, en.fatigue, ord(f0));
  v.bo_hp = b.int_var("hazardPerception", Group::BehOutput, 0, p.perception.max_hp, hp0);
  v.bo_rt = b.int_var("reactionTime", Group::BehOutput, 0, max_rt, rt0);
  v.bo_input_mode = b.enum_var("inputMode", Group::BehOutput, en.input_mode, ord(p.input_mode));
  v.bo_mode = b.enum_var("requestedMode", Group::BehOutput, en.status, ord(mode0));
  v.bo_command = b.enum_var("driverCommand", Group::BehOutput, en.command, ord(AccCommand::Maintain));
  // B_S
  v.fatigue_op = b.enum_var("fatigueOp", Group::BehState, en.op, ord(p.operators.front()));
  v.input_mode = b.enum_var("inputMode", Group::BehState, en.input_mode, ord(p.input_mode));
  v.time_driven = b.int_var("timeDriven", Group::BehState, 0, kMaxTime, 0);
  v.fatigue = b.enum_var("driverFatigue", Group::BehState, en.fatigue, ord(f0));
  v.hp = b.int_var("hazardPerception", Group::BehState, 0, p.perception.max_hp, hp0);
  v.reaction_time = b.int_var("reactionTime", Group::BehState, 0, max_rt, rt0);
  // S_I
  v.si_lead = b.int_var("leadSpeed", Group::SysInput, 0, p.max_speed, p.lead_speed);
  v.si_fatigue = b.enum_var("driverFatigue", Group::SysInput, en.fatigue, ord(f0));
  v.si_rt = b.int_var("reactionTime", Group::SysInput, 0, max_rt, rt0);
  v.si_input_mode = b.enum_var("inputMode", Group::SysInput, en.input_mode, ord(p.input_mode));
  v.si_mode = b.enum_var("requestedMode", Group::SysInput, en.status, ord(mode0));
  v.si_command = b.enum_var("driverCommand", Group::SysInput, en.command, ord(AccCommand::Maintain));
  v.si_complete = b.bool_var("journeyComplete", Group::SysInput, false);
  // S_O
  v.so_speed = b.int_var("speed", Group::SysOutput, 0, p.max_speed, speed0);
  v.so_gap = b.int_var("gap", Group::SysOutput, 0, p.max_gap, gap0);
  v.so_status = b.enum_var("accStatus", Group::SysOutput, en.status, ord(mode0));
  v.so_command = b.enum_var("command", Group::SysOutput, en.command, ord(AccCommand::Maintain));
  v.so_desired = b.int_var("desiredSeparation", Group::SysOutput, 1, p.max_gap,
                           acc::adaptive_separation(f0, cfg.base_separation, p.separation));
  v.so_ssd = b.int_var("safeStoppingDistance", Group::SysOutput, 0, p.max_speed * max_rt,
                       acc::compute_safe_stopping(speed0, rt0));
  // S_S
  v.speed = b.int_var("speed", Group::SysState, 0, p.max_speed, speed0);
  v.gap = b.int_var("gap", Group::SysState, 0, p.max_gap, gap0);
  v.status = b.enum_var("accStatus", Group::SysState, en.status, ord(mode0));

  // Choice points. Initial ones are enumerated in declaration order.
  if (p.operators.size() > 1) b.initial_choice("fatigueOp", v.fatigue_op, detail::labels_of(en.op, p.operators));
  if (const auto* n = std::get_if<NondetRoute>(&cfg.route))
    environment::nondet_route(b, v.route, n->domains, en.terrain, path_ceiling);
  if (cfg.fatigue_source == FatigueSource::Probed) {
    const std::vector<FatigueLevel> all(behaviour::kFatigueLevels.begin(), behaviour::kFatigueLevels.end());
    b.initial_choice("driverFatigue", v.fatigue, detail::labels_of(en.fatigue, all));
  }
  std::optional<ChoiceRef> mode_choice, command_choice;
  if (!cfg.control_mode) {
    mode_choice = b.choice("controlMode", detail::labels_of(en.status, std::vector{AccStatus::Engaged, AccStatus::Manual}),
                           Update::BehInput);
    command_choice = b.choice(
        "driverCommand",
        detail::labels_of(en.command, std::vector{AccCommand::Accelerate, AccCommand::Maintain, AccCommand::Decelerate}),
        Update::BehInput);
  }

  // Environment ---------------------------------------------------------------
  auto read_route = [v](const auto& ctx) {
    environment::Route r;
    for (const auto& rv : v.route)
      r.points.push_back(RoutePoint{static_cast<int>(ctx.get_int(rv.obstacle)), static_cast<int>(ctx.get_int(rv.distance)),
                                    ctx.template get_enum<Terrain>(rv.terrain),
                                    static_cast<int>(ctx.get_int(rv.curvature))});
    r.cursor = static_cast<std::size_t>(ctx.get_int(v.cursor));
    r.progress = static_cast<int>(ctx.get_int(v.progress));
    return r;
  };

  b.update(Update::EnvInput, {Group::SysOutput, Group::EnvState}, [v, n_points](UpdateContext& ctx) {
    const bool done = ctx.get_int(v.cursor) >= n_points;
    ctx.set_int(v.distance_covered, done ? 0 : ctx.get_int(v.so_speed));
  });

  const int max_hazard = p.limits.max_hazard;
  b.update(Update::EnvOutput, {Group::EnvInput, Group::EnvState}, [v, read_route, max_hazard](UpdateContext& ctx) {
    const auto r = environment::advance_route(read_route(ctx), static_cast<int>(ctx.get_int(v.distance_covered)));
    const RoutePoint here = r.complete() ? RoutePoint{0, 1, Terrain::OnRoad, 0} : r.current();
    ctx.set_enum(v.terrain, here.terrain);
    ctx.set_int(v.difficulty, environment::difficulty(here));
    ctx.set_int(v.hazard, environment::gen_hazard(std::min(here.obstacle, max_hazard), max_hazard).size);
    ctx.set_int(v.lead_speed, ctx.get_int(v.env_lead));
    ctx.set_bool(v.journey_complete, r.complete());
  });

  b.update(Update::EnvState, {Group::EnvInput, Group::EnvState}, [v, read_route](UpdateContext& ctx) {
    const auto r = environment::advance_route(read_route(ctx), static_cast<int>(ctx.get_int(v.distance_covered)));
    ctx.set_int(v.cursor, static_cast<std::int64_t>(r.cursor));
    ctx.set_int(v.progress, r.progress);
  });

  // Behaviour -----------------------------------------------------------------
  b.update(Update::BehInput, {Group::BehState, Group::EnvOutput, Group::SysOutput},
           [v, mode_choice, command_choice, fixed_mode = cfg.control_mode](UpdateContext& ctx) {
             const bool done = ctx.get_bool(v.journey_complete);
             ctx.set(v.bi_terrain, ctx.get(v.terrain));
             ctx.set_int(v.bi_difficulty, ctx.get_int(v.difficulty));
             ctx.set_int(v.bi_hazard, ctx.get_int(v.hazard));
             ctx.set_bool(v.bi_complete, done);
             AccStatus mode = fixed_mode.value_or(AccStatus::Engaged);
             AccCommand cmd = AccCommand::Maintain;
             if (!done && mode_choice) {
               mode = static_cast<AccStatus>(as_label(ctx.draw(*mode_choice)).ordinal);
               if (mode == AccStatus::Manual) cmd = static_cast<AccCommand>(as_label(ctx.draw(*command_choice)).ordinal);
             }
             ctx.set_enum(v.bi_mode, mode);
             ctx.set_enum(v.bi_command, cmd);
           });

  // f_BO and f_BS share one driver computation over (B_I, B_S).
  auto driver = [v, p, probed = cfg.fatigue_source == FatigueSource::Probed](const UpdateContext& ctx) {
    detail::DriverUpdate d{};
    const bool done = ctx.get_bool(v.bi_complete);
    d.time_driven = static_cast<int>(ctx.get_int(v.time_driven)) + (done ? 0 : 1);
    if (probed) {
      d.fatigue = ctx.get_enum<FatigueLevel>(v.fatigue);
    } else {
      d.fatigue = behaviour::set_driver_fatigue(d.time_driven, ctx.get_enum<Terrain>(v.bi_terrain),
                                                static_cast<int>(ctx.get_int(v.bi_difficulty)),
                                                ctx.get_enum<IntegratorOp>(v.fatigue_op), p.fatigue);
    }
    d.hp = behaviour::hazard_perception(d.fatigue, p.perception);
    d.rt = behaviour::set_reaction_time(ctx.get_enum<InputMode>(v.input_mode), d.fatigue, p.reaction);
    return d;
  };

  b.update(Update::BehOutput, {Group::BehInput, Group::BehState}, [v, driver](UpdateContext& ctx) {
    const auto d = driver(ctx);
    ctx.set_enum(v.bo_fatigue, d.fatigue);
    ctx.set_int(v.bo_hp, d.hp);
    ctx.set_int(v.bo_rt, d.rt);
    ctx.set(v.bo_input_mode, ctx.get(v.input_mode));
    ctx.set(v.bo_mode, ctx.get(v.bi_mode));
    ctx.set(v.bo_command, ctx.get(v.bi_command));
  });

  b.update(Update::BehState, {Group::BehInput, Group::BehState}, [v, driver](UpdateContext& ctx) {
    const auto d = driver(ctx);
    ctx.set_int(v.time_driven, d.time_driven);
    ctx.set_enum(v.fatigue, d.fatigue);
    ctx.set_int(v.hp, d.hp);
    ctx.set_int(v.reaction_time, d.rt);
  });

  // System --------------------------------------------------------------------
  b.update(Update::SysInput, {Group::BehOutput, Group::EnvOutput, Group::SysState}, [v](UpdateContext& ctx) {
    ctx.set_int(v.si_lead, ctx.get_int(v.lead_speed));
    ctx.set(v.si_fatigue, ctx.get(v.bo_fatigue));
    ctx.set_int(v.si_rt, ctx.get_int(v.bo_rt));
    ctx.set(v.si_input_mode, ctx.get(v.bo_input_mode));
    ctx.set(v.si_mode, ctx.get(v.bo_mode));
    ctx.set(v.si_command, ctx.get(v.bo_command));
    ctx.set_bool(v.si_complete, ctx.get_bool(v.journey_complete));
  });

  struct SystemNext {
    acc::VehicleState vehicle;
    AccCommand command;
  };
  auto system = [v, p, base = cfg.base_separation, fixed_speed = cfg.speed == SpeedSource::Fixed](const UpdateContext& ctx) {
    acc::VehicleState cur{static_cast<int>(ctx.get_int(v.speed)), static_cast<int>(ctx.get_int(v.gap)),
                          ctx.get_enum<AccStatus>(v.status), 1, 0};
    const auto fatigue = ctx.get_enum<FatigueLevel>(v.si_fatigue);
    const int lead = static_cast<int>(ctx.get_int(v.si_lead));
    const int rt = static_cast<int>(ctx.get_int(v.si_rt));
    SystemNext out{cur, AccCommand::Maintain};
    if (ctx.get_bool(v.si_complete)) {
      // Journey over: the convoy halts and holds its gap.
      out.vehicle.speed = 0;
    } else {
      out.vehicle.acc_status = ctx.get_enum<AccStatus>(v.si_mode);
      if (out.vehicle.acc_status == AccStatus::Engaged) {
        const int preset = acc::fatigue_aware_preset(fatigue, base, lead, ctx.get_enum<InputMode>(v.si_input_mode),
                                                     p.reaction, p.separation);
        out.command = acc::acc_control(preset, cur.gap_to_lead, cur.speed, lead);
      } else {
        out.command = ctx.get_enum<AccCommand>(v.si_command);
      }
      out.vehicle = acc::apply_command(out.vehicle, fixed_speed ? AccCommand::Maintain : out.command, lead, p.max_speed);
      out.vehicle.gap_to_lead = std::min(out.vehicle.gap_to_lead, p.max_gap);
    }
    out.vehicle.desired_separation = acc::adaptive_separation(fatigue, base, p.separation);
    out.vehicle.safe_stopping_distance = acc::compute_safe_stopping(out.vehicle.speed, rt);
    return out;
  };

  b.update(Update::SysOutput, {Group::SysInput, Group::SysState}, [v, system](UpdateContext& ctx) {
    const auto n = system(ctx);
    ctx.set_int(v.so_speed, n.vehicle.speed);
    ctx.set_int(v.so_gap, n.vehicle.gap_to_lead);
    ctx.set_enum(v.so_status, n.vehicle.acc_status);
    ctx.set_enum(v.so_command, n.command);
    ctx.set_int(v.so_desired, n.vehicle.desired_separation);
    ctx.set_int(v.so_ssd, n.vehicle.safe_stopping_distance);
  });

  b.update(Update::SysState, {Group::SysInput, Group::SysState}, [v, system](UpdateContext& ctx) {
    const auto n = system(ctx);
    ctx.set_int(v.speed, n.vehicle.speed);
    ctx.set_int(v.gap, n.vehicle.gap_to_lead);
    ctx.set_enum(v.status, n.vehicle.acc_status);
  });

  // Properties, in declaration order.
  const SafetyLimits lim{cfg.base_separation, p.separation, p.limits.max_hazard};
  b.assertion(kSeparationMaintained, [v, lim](const StateView& s) {
    const int ssd = acc::compute_safe_stopping(static_cast<int>(s.get_int(v.speed)), static_cast<int>(s.get_int(v.reaction_time)));
    return is_okay(s.get_enum<FatigueLevel>(v.fatigue), static_cast<int>(s.get_int(v.hp)), ssd,
                   static_cast<int>(s.get_int(v.gap)),
                   environment::gen_hazard(static_cast<int>(s.get_int(v.hazard)), lim.max_hazard), lim);
  });
  b.assertion(kFatigueBounded, [v](const StateView& s) {
    return !(s.get_enum<FatigueLevel>(v.fatigue) == FatigueLevel::Exhausted && !s.get_bool(v.journey_complete));
  });

  return CaseStudy{cfg, register_model(std::move(b).build()), v, en};
}

inline Verdict run_scenario(const ScenarioConfig& cfg, std::uint64_t path_ceiling = 100'000'000) {
  try {
    const auto cs = build_case_study(cfg, path_ceiling);
    return explore(*cs.model, ExploreOptions{cfg.bound, path_ceiling});
  } catch (const std::exception& e) {
    return Verdict{ModelFailure{e.what()}, {}};
  }
}

// Named scenarios ---------------------------------------------------------------

/// The five-section example route: mixed terrain, a few obstacles and bends.
inline std::vector<RoutePoint> example_route() {
  return {
      {0, 4, Terrain::OffRoad, 0}, {1, 5, Terrain::OffRoad, 0}, {0, 6, Terrain::OnRoad, 1},
      {2, 7, Terrain::OnRoad, 1},  {0, 5, Terrain::OnRoad, 0},
  };
}

/// Route of unknown shape, ACC engaged throughout, fatigue calculated.
inline ScenarioConfig scenario_lowered_speed() {
  ScenarioConfig c;
  c.name = "lowered-speed";
  NondetRoute n;
  n.length = 5;
  n.domains.obstacle = {0};
  n.domains.distance = {6, 9};
  n.domains.terrain = {Terrain::OnRoad, Terrain::OffRoad};
  n.domains.curvature = {0};
  c.route = n;
  c.control_mode = AccStatus::Engaged;
  return c;
}

/// Fixed route, control mode drawn every iteration.
inline ScenarioConfig scenario_manual_override() {
  ScenarioConfig c;
  c.name = "manual-override";
  c.route = example_route();
  c.control_mode = std::nullopt;
  return c;
}

/// Fixed route, ACC engaged; only the integrator operators branch.
inline ScenarioConfig scenario_ideal() {
  ScenarioConfig c;
  c.name = "ideal";
  c.route = example_route();
  c.control_mode = AccStatus::Engaged;
  return c;
}

inline std::vector<std::string> scenario_names() { return {"lowered-speed", "manual-override", "ideal"}; }

inline std::optional<ScenarioConfig> scenario_by_name(std::string_view name) {
  if (name == "lowered-speed") return scenario_lowered_speed();
  if (name == "manual-override") return scenario_manual_override();
  if (name == "ideal") return scenario_ideal();
  return std::nullopt;
}

} // namespace hil::scenarios
