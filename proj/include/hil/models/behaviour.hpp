#pragma once

// Driver behaviour: fatigue from time-on-task and terrain, reaction time from
// input mode and fatigue, hazard perception, and the integrator operators that
// combine independent sub-models.

#include "hil/models/environment.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hil::behaviour {

enum class FatigueLevel : std::uint8_t { Normal, Tired, Exhausted };
enum class InputMode : std::uint8_t { GamePad, Speech, MultiModal };
enum class BaseReaction : std::uint8_t { Fast, Okay, Slow };
enum class IntegratorOp : std::uint8_t { Max, Min, Sum, RoundedMean };

inline const std::vector<std::string>& fatigue_labels() {
  static const std::vector<std::string> l{"Normal", "Tired", "Exhausted"};
  return l;
}
inline const std::vector<std::string>& input_mode_labels() {
  static const std::vector<std::string> l{"GamePad", "Speech", "MultiModal"};
  return l;
}
inline const std::vector<std::string>& integrator_labels() {
  static const std::vector<std::string> l{"Max", "Min", "Sum", "RoundedMean"};
  return l;
}

inline constexpr std::array<FatigueLevel, 3> kFatigueLevels = {FatigueLevel::Normal, FatigueLevel::Tired,
                                                               FatigueLevel::Exhausted};
inline constexpr std::array<InputMode, 3> kInputModes = {InputMode::GamePad, InputMode::Speech,
                                                         InputMode::MultiModal};
inline constexpr std::array<IntegratorOp, 4> kIntegratorOps = {IntegratorOp::Max, IntegratorOp::Min,
                                                               IntegratorOp::Sum, IntegratorOp::RoundedMean};

inline int severity(FatigueLevel f) { return static_cast<int>(f); }

inline FatigueLevel fatigue_from_severity(int s) {
  return static_cast<FatigueLevel>(std::clamp(s, 0, 2));
}

/// One level more tired, saturating at Exhausted.
inline FatigueLevel next_level(FatigueLevel f) { return fatigue_from_severity(severity(f) + 1); }

/// Numeric stand-ins for the symbolic reaction times and the fatigue factors.
struct ReactionTable {
  int fast = 1;
  int okay = 2;
  int slow = 3;
  int n_factor = 1;
  int t_factor = 2;
  int e_factor = 3;

  void validate() const {
    if (!(0 < fast && fast < okay && okay < slow))
      throw std::invalid_argument("reaction bases must satisfy 0 < fast < okay < slow");
    if (!(1 <= n_factor && n_factor <= t_factor && t_factor <= e_factor))
      throw std::invalid_argument("fatigue factors must satisfy 1 <= nFactor <= tFactor <= eFactor");
  }
  int max_reaction_time() const { return slow * e_factor; }
  friend bool operator==(const ReactionTable&, const ReactionTable&) = default;
};

inline BaseReaction base_reaction(InputMode m) {
  switch (m) {
  case InputMode::GamePad: return BaseReaction::Okay;
  case InputMode::Speech: return BaseReaction::Slow;
  case InputMode::MultiModal: return BaseReaction::Fast;
  }
  return BaseReaction::Slow;
}

inline int reaction_units(BaseReaction r, const ReactionTable& t) {
  switch (r) {
  case BaseReaction::Fast: return t.fast;
  case BaseReaction::Okay: return t.okay;
  case BaseReaction::Slow: return t.slow;
  }
  return t.slow;
}

inline int fatigue_factor(FatigueLevel f, const ReactionTable& t) {
  switch (f) {
  case FatigueLevel::Normal: return t.n_factor;
  case FatigueLevel::Tired: return t.t_factor;
  case FatigueLevel::Exhausted: return t.e_factor;
  }
  return t.e_factor;
}

/// Qualitative reaction time by input mode, scaled by the fatigue factor.
inline int set_reaction_time(InputMode mode, FatigueLevel fatigue, const ReactionTable& t = {}) {
  return reaction_units(base_reaction(mode), t) * fatigue_factor(fatigue, t);
}

/// Combines two sub-model values. Sum saturates to [lo, hi]; RoundedMean rounds up.
inline int integrate(IntegratorOp op, int v1, int v2, int lo, int hi) {
  switch (op) {
  case IntegratorOp::Max: return std::max(v1, v2);
  case IntegratorOp::Min: return std::min(v1, v2);
  case IntegratorOp::Sum: return std::clamp(v1 + v2, lo, hi);
  case IntegratorOp::RoundedMean: {
    const int s = v1 + v2;
    return s >= 0 ? (s + 1) / 2 : s / 2;
  }
  }
  return v1;
}

/// Sub-model tables for fatigue. Time is counted in control-loop iterations.
struct FatigueTable {
  int tired_after = 4;      // T1
  int exhausted_after = 8;  // T2
  int difficulty_step = 4;  // each full step of obstacle+curvature adds one severity level

  void validate() const {
    if (!(0 <= tired_after && tired_after <= exhausted_after))
      throw std::invalid_argument("fatigue thresholds must satisfy 0 <= T1 <= T2");
    if (difficulty_step < 1) throw std::invalid_argument("difficulty step must be positive");
  }
  friend bool operator==(const FatigueTable&, const FatigueTable&) = default;
};

inline FatigueLevel time_on_task_fatigue(int time_driven, const FatigueTable& t) {
  if (time_driven >= t.exhausted_after) return FatigueLevel::Exhausted;
  if (time_driven >= t.tired_after) return FatigueLevel::Tired;
  return FatigueLevel::Normal;
}

/// Off-road driving is one level more demanding; difficult sections add more.
inline FatigueLevel terrain_fatigue(environment::Terrain terrain, int difficulty, const FatigueTable& t) {
  const int base = terrain == environment::Terrain::OffRoad ? 1 : 0;
  return fatigue_from_severity(base + std::max(difficulty, 0) / t.difficulty_step);
}

inline FatigueLevel set_driver_fatigue(int time_driven, environment::Terrain terrain, int difficulty,
                                       IntegratorOp op, const FatigueTable& t = {}) {
  const int by_time = severity(time_on_task_fatigue(time_driven, t));
  const int by_terrain = severity(terrain_fatigue(terrain, difficulty, t));
  return fatigue_from_severity(integrate(op, by_time, by_terrain, 0, 2));
}

inline FatigueLevel set_driver_fatigue(int time_driven, environment::Terrain terrain, IntegratorOp op,
                                       const FatigueTable& t = {}) {
  return set_driver_fatigue(time_driven, terrain, 0, op, t);
}

struct PerceptionTable {
  int max_hp = 5;
  friend bool operator==(const PerceptionTable&, const PerceptionTable&) = default;
};

/// Raw perception ability before clamping: two units lost per fatigue level.
inline int perception_raw(FatigueLevel f, const PerceptionTable& t) { return t.max_hp - 2 * severity(f); }

/// Clamps any integer into [0, maxHP].
inline int hp_function(int raw, const PerceptionTable& t = {}) { return std::clamp(raw, 0, t.max_hp); }

inline int hazard_perception(FatigueLevel f, const PerceptionTable& t = {}) {
  return hp_function(perception_raw(f, t), t);
}

struct DriverState {
  FatigueLevel fatigue = FatigueLevel::Normal;
  int time_driven = 0;
  int hazard_perception = 0;
  InputMode mode = InputMode::GamePad;
  int reaction_time = 0;
  friend bool operator==(const DriverState&, const DriverState&) = default;
};

} // namespace hil::behaviour
