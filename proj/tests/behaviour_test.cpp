#include "hil/models/behaviour.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace hil::behaviour {
namespace {

using environment::Terrain;

constexpr std::array<Terrain, 2> kTerrains = {Terrain::OnRoad, Terrain::OffRoad};

TEST(ReactionTime, MultiModalRestedIsFastest) {
  const ReactionTable t;
  EXPECT_EQ(set_reaction_time(InputMode::MultiModal, FatigueLevel::Normal), t.fast * t.n_factor);
  for (auto m : kInputModes)
    for (auto f : kFatigueLevels) EXPECT_LE(set_reaction_time(InputMode::MultiModal, FatigueLevel::Normal), set_reaction_time(m, f));
}

TEST(ReactionTime, SpeechExhaustedIsSlowest) {
  const ReactionTable t;
  EXPECT_EQ(set_reaction_time(InputMode::Speech, FatigueLevel::Exhausted), t.slow * t.e_factor);
  for (auto m : kInputModes)
    for (auto f : kFatigueLevels) EXPECT_GE(set_reaction_time(InputMode::Speech, FatigueLevel::Exhausted), set_reaction_time(m, f));
}

TEST(ReactionTime, GamePadTiredIsOkayTimesTired) {
  EXPECT_EQ(set_reaction_time(InputMode::GamePad, FatigueLevel::Tired), 2 * 2);
}

TEST(ReactionTime, MonotoneInFatigueForEveryMode) {
  int pairs = 0;
  for (auto m : kInputModes)
    for (auto a : kFatigueLevels)
      for (auto b : kFatigueLevels) {
        if (severity(a) <= severity(b)) EXPECT_LE(set_reaction_time(m, a), set_reaction_time(m, b));
        ++pairs;
      }
  EXPECT_EQ(pairs, 27);
}

TEST(ReactionTime, ModeOrderingAtEveryFatigue) {
  for (auto f : kFatigueLevels) {
    EXPECT_LE(set_reaction_time(InputMode::MultiModal, f), set_reaction_time(InputMode::GamePad, f));
    EXPECT_LE(set_reaction_time(InputMode::GamePad, f), set_reaction_time(InputMode::Speech, f));
  }
}

TEST(ReactionTime, CustomFactorScales) {
  ReactionTable t;
  t.e_factor = 5;
  EXPECT_EQ(set_reaction_time(InputMode::GamePad, FatigueLevel::Exhausted, t), 10);
}

TEST(ReactionTable, RejectsBrokenOrderings) {
  ReactionTable t;
  t.okay = t.fast;
  EXPECT_THROW(t.validate(), std::invalid_argument);
  t = {};
  t.t_factor = 4;
  EXPECT_THROW(t.validate(), std::invalid_argument);
  t = {};
  t.n_factor = 0;
  EXPECT_THROW(t.validate(), std::invalid_argument);
  EXPECT_NO_THROW(ReactionTable{}.validate());
}

TEST(Integrate, RoundedMeanRoundsUp) {
  EXPECT_EQ(integrate(IntegratorOp::RoundedMean, 3, 4, 0, 10), static_cast<int>(std::ceil(7 / 2.0)));
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b)
      ASSERT_EQ(integrate(IntegratorOp::RoundedMean, a, b, -10, 10), static_cast<int>(std::ceil((a + b) / 2.0)));
}

TEST(Integrate, SumSaturates) {
  EXPECT_EQ(integrate(IntegratorOp::Sum, 2, 2, 0, 2), 2);
  EXPECT_EQ(integrate(IntegratorOp::Sum, 0, 1, 0, 2), 1);
}

TEST(Integrate, AlgebraicLaws) {
  for (int a = -3; a <= 5; ++a) {
    EXPECT_EQ(integrate(IntegratorOp::Max, a, a, -3, 5), a);
    EXPECT_EQ(integrate(IntegratorOp::Min, a, a, -3, 5), a);
    for (int b = -3; b <= 5; ++b)
      for (auto op : kIntegratorOps) ASSERT_EQ(integrate(op, a, b, -3, 5), integrate(op, b, a, -3, 5));
  }
}

TEST(DriverFatigue, RestedAtStart) {
  for (auto op : kIntegratorOps) EXPECT_EQ(set_driver_fatigue(0, Terrain::OnRoad, op), FatigueLevel::Normal);
}

TEST(DriverFatigue, MaxTimeOffRoadIsExhaustedUnderMax) {
  const FatigueTable t;
  // Both sub-model tables at their top inputs, then Max.
  const int by_time = severity(time_on_task_fatigue(1'000'000, t));
  const int by_terrain = severity(terrain_fatigue(Terrain::OffRoad, 0, t));
  EXPECT_EQ(std::max(by_time, by_terrain), 2);
  EXPECT_EQ(set_driver_fatigue(1'000'000, Terrain::OffRoad, IntegratorOp::Max), FatigueLevel::Exhausted);
}

TEST(DriverFatigue, OffRoadNoEasierThanOnRoad) {
  for (auto op : kIntegratorOps)
    for (int t = 0; t <= 60; ++t)
      for (int d = 0; d <= 6; ++d)
        ASSERT_GE(severity(set_driver_fatigue(t, Terrain::OffRoad, d, op)), severity(set_driver_fatigue(t, Terrain::OnRoad, d, op)));
}

TEST(DriverFatigue, MonotoneInTimeForEveryOperator) {
  for (int t1 = 0; t1 <= 6; ++t1) {
    for (int t2 = t1; t2 <= 12; ++t2) {
      const FatigueTable tab{t1, t2, 4};
      for (auto op : kIntegratorOps)
        for (auto terrain : kTerrains)
          for (int d = 0; d <= 6; ++d)
            for (int t = 0; t <= 30; ++t)
              ASSERT_LE(severity(set_driver_fatigue(t, terrain, d, op, tab)), severity(set_driver_fatigue(t + 1, terrain, d, op, tab)))
                  << "T1=" << t1 << " T2=" << t2 << " t=" << t;
    }
  }
}

TEST(DriverFatigue, TimeThresholds) {
  const FatigueTable t;
  EXPECT_EQ(time_on_task_fatigue(3, t), FatigueLevel::Normal);
  EXPECT_EQ(time_on_task_fatigue(4, t), FatigueLevel::Tired);
  EXPECT_EQ(time_on_task_fatigue(7, t), FatigueLevel::Tired);
  EXPECT_EQ(time_on_task_fatigue(8, t), FatigueLevel::Exhausted);
}

TEST(DriverFatigue, DifficultyAddsSeverity) {
  const FatigueTable t;
  EXPECT_EQ(terrain_fatigue(Terrain::OnRoad, 3, t), FatigueLevel::Normal);
  EXPECT_EQ(terrain_fatigue(Terrain::OnRoad, 4, t), FatigueLevel::Tired);
  EXPECT_EQ(terrain_fatigue(Terrain::OffRoad, 4, t), FatigueLevel::Exhausted);
  EXPECT_EQ(terrain_fatigue(Terrain::OffRoad, 6, t), FatigueLevel::Exhausted);
}

TEST(HazardPerception, ClampsBelow) { EXPECT_EQ(hp_function(-7), 0); }
TEST(HazardPerception, ClampsAbove) { EXPECT_EQ(hp_function(42), PerceptionTable{}.max_hp); }

TEST(HazardPerception, TotalIntoRange) {
  for (int raw = -100; raw <= 100; ++raw) {
    ASSERT_GE(hp_function(raw), 0);
    ASSERT_LE(hp_function(raw), 5);
  }
}

TEST(HazardPerception, NonIncreasingInFatigue) {
  for (int max_hp = 0; max_hp <= 8; ++max_hp) {
    const PerceptionTable t{max_hp};
    EXPECT_LE(hazard_perception(FatigueLevel::Exhausted, t), hazard_perception(FatigueLevel::Normal, t));
    for (std::size_t i = 0; i + 1 < kFatigueLevels.size(); ++i)
      EXPECT_LE(hazard_perception(kFatigueLevels[i + 1], t), hazard_perception(kFatigueLevels[i], t));
  }
}

TEST(Fatigue, NextLevelSaturates) {
  EXPECT_EQ(next_level(FatigueLevel::Normal), FatigueLevel::Tired);
  EXPECT_EQ(next_level(FatigueLevel::Tired), FatigueLevel::Exhausted);
  EXPECT_EQ(next_level(FatigueLevel::Exhausted), FatigueLevel::Exhausted);
}

} // namespace
} // namespace hil::behaviour
