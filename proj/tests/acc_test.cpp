#include "hil/models/acc.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

namespace hil::acc {
namespace {

using behaviour::FatigueLevel;
using behaviour::kFatigueLevels;

constexpr int kMaxSpeed = 10;

TEST(AccDecide, EqualGapMaintains) { EXPECT_EQ(acc_decide(10, 10), AccCommand::Maintain); }
TEST(AccDecide, NarrowerGapDecelerates) { EXPECT_EQ(acc_decide(10, 7), AccCommand::Decelerate); }
TEST(AccDecide, WiderGapAccelerates) { EXPECT_EQ(acc_decide(10, 14), AccCommand::Accelerate); }

TEST(AccDecide, ExactlyOneBranchPerInput) {
  for (int preset = 1; preset <= 60; ++preset) {
    for (int gap = 0; gap <= 80; ++gap) {
      const AccCommand c = acc_decide(preset, gap);
      const int fired = (preset == gap) + (preset > gap) + (preset < gap);
      ASSERT_EQ(fired, 1);
      if (preset == gap) ASSERT_EQ(c, AccCommand::Maintain);
      if (preset > gap) ASSERT_EQ(c, AccCommand::Decelerate);
      if (preset < gap) ASSERT_EQ(c, AccCommand::Accelerate);
    }
  }
}

TEST(ApplyCommand, DecelerateAtZeroClamps) {
  const auto v = apply_command({0, 10}, AccCommand::Decelerate, 5, kMaxSpeed);
  EXPECT_EQ(v.speed, 0);
}

TEST(ApplyCommand, MatchedSpeedsKeepGap) {
  const auto v = apply_command({5, 10}, AccCommand::Maintain, 5, kMaxSpeed);
  EXPECT_EQ(v.speed, 5);
  EXPECT_EQ(v.gap_to_lead, 10);
}

TEST(ApplyCommand, AccelerateClosesGap) {
  const auto v = apply_command({5, 10}, AccCommand::Accelerate, 5, kMaxSpeed);
  EXPECT_EQ(v.speed, 6);
  EXPECT_EQ(v.gap_to_lead, 9);
}

TEST(ApplyCommand, StaysInsideDomain) {
  for (int speed = 0; speed <= kMaxSpeed; ++speed)
    for (int gap = 0; gap <= 40; ++gap)
      for (int lead = 0; lead <= kMaxSpeed; ++lead)
        for (auto cmd : {AccCommand::Maintain, AccCommand::Decelerate, AccCommand::Accelerate}) {
          const auto v = apply_command({speed, gap}, cmd, lead, kMaxSpeed);
          ASSERT_GE(v.speed, 0);
          ASSERT_LE(v.speed, kMaxSpeed);
          ASSERT_GE(v.gap_to_lead, 0);
          ASSERT_LE(std::abs(v.speed - speed), 1);
          const int want = cmd == AccCommand::Accelerate ? std::min(speed + 1, kMaxSpeed)
                           : cmd == AccCommand::Decelerate ? std::max(speed - 1, 0)
                                                           : speed;
          ASSERT_EQ(v.speed, want);
          ASSERT_EQ(v.gap_to_lead, std::max(0, gap + lead - want));
        }
}

TEST(AdaptiveSeparation, NormalIsBase) { EXPECT_EQ(adaptive_separation(FatigueLevel::Normal, 10), 10); }

TEST(AdaptiveSeparation, WidensWithFatigue) {
  const int t = adaptive_separation(FatigueLevel::Tired, 10);
  const int e = adaptive_separation(FatigueLevel::Exhausted, 10);
  EXPECT_GE(e, t);
  EXPECT_GE(t, 10);
  EXPECT_GE(adaptive_separation(FatigueLevel::Tired, 1), 1);
}

TEST(AdaptiveSeparation, QuarterAndHalfRoundedUp) {
  for (int base = 1; base <= 200; ++base) {
    ASSERT_EQ(adaptive_separation(FatigueLevel::Tired, base), static_cast<int>(std::ceil(base * 1.25 - 1e-9)));
    ASSERT_EQ(adaptive_separation(FatigueLevel::Exhausted, base), static_cast<int>(std::ceil(base * 1.5 - 1e-9)));
  }
}

TEST(AdaptiveSeparation, MonotoneInFatigueAndBase) {
  for (int base = 1; base <= 100; ++base) {
    for (std::size_t i = 0; i + 1 < kFatigueLevels.size(); ++i)
      ASSERT_LE(adaptive_separation(kFatigueLevels[i], base), adaptive_separation(kFatigueLevels[i + 1], base));
    for (auto f : kFatigueLevels) ASSERT_LE(adaptive_separation(f, base), adaptive_separation(f, base + 1));
  }
}

TEST(SafeStopping, StationaryVehicleNeedsNothing) {
  for (int rt = 0; rt <= 20; ++rt) EXPECT_EQ(compute_safe_stopping(0, rt), 0);
}

TEST(SafeStopping, SpeedTimesReaction) { EXPECT_EQ(compute_safe_stopping(5, 2), 10); }

TEST(SafeStopping, StrictlyIncreasingInEachArgument) {
  for (int s = 0; s <= kMaxSpeed; ++s) {
    for (int r = 0; r <= 20; ++r) {
      if (r > 0 && s < kMaxSpeed) ASSERT_LT(compute_safe_stopping(s, r), compute_safe_stopping(s + 1, r));
      if (s > 0) ASSERT_LT(compute_safe_stopping(s, r), compute_safe_stopping(s, r + 1));
      ASSERT_LE(compute_safe_stopping(s, r), compute_safe_stopping(s, r + 1));
    }
  }
}

TEST(BrakingLookahead, MatchesStepwiseBraking) {
  for (int speed = 0; speed <= kMaxSpeed; ++speed) {
    for (int lead = 0; lead <= kMaxSpeed; ++lead) {
      // One step at the current speed, then walk speed one unit per step
      // toward lead, adding up the gap change.
      int gap = 100 + lead - speed, s = speed;
      while (s != lead) {
        s += s < lead ? 1 : -1;
        gap += lead - s;
      }
      ASSERT_EQ(braking_lookahead_gap(100, speed, lead), gap) << speed << " " << lead;
    }
  }
}

// Independent kinematics for the convergence sweep.
struct Plant {
  int speed, gap;
  void step(AccCommand c, int lead) {
    if (c == AccCommand::Accelerate && speed < kMaxSpeed) ++speed;
    if (c == AccCommand::Decelerate && speed > 0) --speed;
    gap = std::max(0, gap + lead - speed);
  }
};

TEST(AccConvergence, EveryStartGapSettlesNearPreset) {
  std::size_t cases = 0;
  for (int lead = 1; lead < kMaxSpeed; ++lead) {
    for (int preset = 1; preset <= 40; ++preset) {
      for (int gap0 = 0; gap0 <= 80; ++gap0) {
        Plant p{lead, gap0};
        const int budget = std::abs(gap0 - preset) + kMaxSpeed;
        // First step from which the gap never leaves the band again.
        int settled = 0;
        for (int t = 0; t <= budget + 200; ++t) {
          if (std::abs(p.gap - preset) > 1) settled = t + 1;
          p.step(acc_control(preset, p.gap, p.speed, lead), lead);
        }
        ASSERT_LE(settled, budget) << "lead=" << lead << " preset=" << preset << " gap0=" << gap0;
        ++cases;
      }
    }
  }
  EXPECT_EQ(cases, 9u * 40u * 81u);
}

TEST(FatigueAwarePreset, CoversNextLevelRequirement) {
  const behaviour::ReactionTable rt;
  for (auto f : kFatigueLevels) {
    for (auto mode : behaviour::kInputModes) {
      for (int lead = 0; lead < kMaxSpeed; ++lead) {
        const int preset = fatigue_aware_preset(f, 10, lead, mode, rt, {});
        const auto next = behaviour::next_level(f);
        EXPECT_GE(preset, adaptive_separation(next, 10));
        EXPECT_GE(preset, adaptive_separation(f, 10));
        EXPECT_GE(preset, (lead + 1) * behaviour::set_reaction_time(mode, next, rt));
      }
    }
  }
}

} // namespace
} // namespace hil::acc
