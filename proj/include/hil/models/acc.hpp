#pragma once

// Host vehicle with adaptive cruise control over the gap to one lead vehicle.
// Unit time step; speed moves one unit per step; gap += lead - host.

#include "hil/models/behaviour.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

namespace hil::acc {

enum class AccCommand : std::uint8_t { Maintain, Decelerate, Accelerate };
enum class AccStatus : std::uint8_t { Engaged, Manual };

inline const std::vector<std::string>& command_labels() {
  static const std::vector<std::string> l{"Maintain", "Decelerate", "Accelerate"};
  return l;
}
inline const std::vector<std::string>& status_labels() {
  static const std::vector<std::string> l{"Engaged", "Manual"};
  return l;
}

struct VehicleState {
  int speed = 0;
  int gap_to_lead = 0;  // 0 is a collision
  AccStatus acc_status = AccStatus::Engaged;
  int desired_separation = 1;
  int safe_stopping_distance = 0;
  friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

/// Preset gap against the measured gap: keep speed on a match, slow down when
/// the measured gap is narrower, speed up when it is wider.
inline AccCommand acc_decide(int preset_gap, int current_gap) {
  if (preset_gap == current_gap) return AccCommand::Maintain;
  if (preset_gap > current_gap) return AccCommand::Decelerate;
  return AccCommand::Accelerate;
}

inline VehicleState apply_command(VehicleState v, AccCommand cmd, int lead_speed, int max_speed) {
  int delta = 0;
  if (cmd == AccCommand::Accelerate) delta = 1;
  if (cmd == AccCommand::Decelerate) delta = -1;
  v.speed = std::clamp(v.speed + delta, 0, max_speed);
  v.gap_to_lead = std::max(0, v.gap_to_lead + lead_speed - v.speed);
  return v;
}

/// Gap once the relative speed has been brought back to zero at one unit per
/// step, starting after one more step at the current speed. Feeding this to acc_decide instead of the raw gap stops
/// the controller from overshooting and oscillating around the preset.
inline int braking_lookahead_gap(int gap, int speed, int lead_speed) {
  const int closing = speed - lead_speed;
  const int travel = std::abs(closing) * (std::abs(closing) + 1) / 2;
  return closing > 0 ? gap - travel : gap + travel;
}

inline AccCommand acc_control(int preset_gap, int gap, int speed, int lead_speed) {
  return acc_decide(preset_gap, braking_lookahead_gap(gap, speed, lead_speed));
}

struct SeparationPolicy {
  int tired_percent = 25;
  int exhausted_percent = 50;
  friend bool operator==(const SeparationPolicy&, const SeparationPolicy&) = default;
};

/// Desired separation widened for fatigue, rounded up. Equals `base` when Normal.
inline int adaptive_separation(behaviour::FatigueLevel fatigue, int base, const SeparationPolicy& p = {}) {
  int percent = 0;
  if (fatigue == behaviour::FatigueLevel::Tired) percent = p.tired_percent;
  if (fatigue == behaviour::FatigueLevel::Exhausted) percent = p.exhausted_percent;
  return base + (base * percent + 99) / 100;
}

inline int compute_safe_stopping(int speed, int reaction_time) { return speed * reaction_time; }

/// The gap the fatigue-sensitive ACC aims for: what the *next* fatigue level
/// would require at one unit above lead speed. Holding it keeps the current
/// requirement met when fatigue steps up.
inline int fatigue_aware_preset(behaviour::FatigueLevel fatigue, int base_separation, int lead_speed,
                                behaviour::InputMode mode, const behaviour::ReactionTable& reaction,
                                const SeparationPolicy& policy) {
  const auto anticipated = behaviour::next_level(fatigue);
  const int rt = behaviour::set_reaction_time(mode, anticipated, reaction);
  return std::max(adaptive_separation(anticipated, base_separation, policy),
                  compute_safe_stopping(lead_speed + 1, rt));
}

} // namespace hil::acc
