// Copyright 2026 The dosgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dosgame/game.h"

#include <cmath>
#include <map>
#include <stdexcept>

#include <gtest/gtest.h>

#include "test_support.h"

namespace dosgame {
namespace {

using testing::DefaultSpec;
using testing::ScalarPBar;

TEST(RewardTest, HandComputedValue) {
  const GameSpec spec = DefaultSpec(1.0, 1.0);
  // Tr(P_bar) + 1 * 2 - 1 * 1.
  EXPECT_NEAR(RewardAttacker(spec, 0, 0, 0), ScalarPBar() + 1.0, 1e-9);
  EXPECT_NEAR(RewardAttacker(spec, 0, 0, 0), 1.9245, 1e-4);
  EXPECT_NEAR(RewardAttacker(spec, 2, 1, 1),
              1.44 * (1.44 * ScalarPBar() + 0.8) + 0.8 + 5.0 - 6.0, 1e-9);
}

TEST(RewardTest, PureTraceWithoutEnergyWeights) {
  const GameSpec spec = DefaultSpec(0.0, 0.0);
  for (int m = 0; m <= 4; ++m) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        EXPECT_EQ(RewardAttacker(spec, m, a, b), spec.steady().trace_table[m]);
      }
    }
  }
}

TEST(RewardTest, ZeroSumAndTermsAgree) {
  const GameSpec spec = DefaultSpec(0.7, 0.3);
  for (int m = 0; m <= 4; ++m) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const double r1 = RewardAttacker(spec, m, a, b);
        EXPECT_EQ(r1 + RewardSensor(spec, m, a, b), 0.0);
        const RewardTerms t = RewardAttackerTerms(spec, m, a, b);
        EXPECT_EQ(t.trace + t.energy, r1);
      }
    }
  }
  EXPECT_THROW(RewardAttacker(spec, 5, 0, 0), std::out_of_range);
  EXPECT_THROW(RewardAttacker(spec, 0, 2, 0), std::out_of_range);
}

TEST(StateTest, OrderingAndRoundTrip) {
  const GameSpec spec = DefaultSpec();
  ASSERT_EQ(spec.num_states(), 20);
  const std::vector<GameState> states = EnumerateStates(spec);
  // s0 = (0, 0.8, 0.8), s1 = (0, 0.8, 0.6), s2 = (0, 0.6, 0.8).
  EXPECT_EQ(states[0], (GameState{0, 1, 1}));
  EXPECT_EQ(states[1], (GameState{0, 1, 0}));
  EXPECT_EQ(states[2], (GameState{0, 0, 1}));
  EXPECT_EQ(states[3], (GameState{0, 0, 0}));
  EXPECT_EQ(states[4], (GameState{1, 1, 1}));
  EXPECT_EQ(states[19], (GameState{4, 0, 0}));
  for (int s = 0; s < spec.num_states(); ++s) {
    EXPECT_EQ(StateIndex(spec, StateOf(spec, s)), s);
  }
  EXPECT_THROW(StateOf(spec, 20), std::out_of_range);
}

TEST(TransitionTest, StationarySplitsEvenly) {
  const GameSpec spec = DefaultSpec();
  const GameState s{2, 1, 0};
  const double q = spec.Arrival(1, 0, 1, 0);
  std::map<int, double> dist;
  double total = 0.0;
  for (const Transition& t : TransitionDistribution(spec, s, 1, 0)) {
    dist[t.next] += t.prob;
    total += t.prob;
  }
  EXPECT_NEAR(total, 1.0, 1e-15);
  for (int gs = 0; gs < 2; ++gs) {
    for (int ga = 0; ga < 2; ++ga) {
      EXPECT_NEAR(dist[StateIndex(spec, {0, gs, ga})], 0.25 * q, 1e-15);
      EXPECT_NEAR(dist[StateIndex(spec, {3, gs, ga})], 0.25 * (1 - q), 1e-15);
    }
  }
}

TEST(TransitionTest, DegenerateChannels) {
  const GameSpec base = DefaultSpec();
  const int cells = 2 * 2 * 2 * 2;
  const GameSpec always = base.WithArrivalTable(std::vector<double>(cells, 1.0));
  const GameSpec never = base.WithArrivalTable(std::vector<double>(cells, 0.0));
  for (int s = 0; s < base.num_states(); ++s) {
    const GameState st = StateOf(base, s);
    for (const Transition& t : TransitionDistribution(always, st, 0, 1)) {
      if (t.prob > 0) EXPECT_EQ(StateOf(base, t.next).tau, 0);
    }
    for (const Transition& t : TransitionDistribution(never, st, 0, 1)) {
      if (t.prob > 0) {
        EXPECT_EQ(StateOf(base, t.next).tau, std::min(st.tau + 1, 4));
      }
    }
  }
  EXPECT_THROW(base.WithArrivalTable(std::vector<double>(3, 1.0)),
               std::invalid_argument);
}

TEST(TransitionTest, MarkovModeConditionsOnCurrentGains) {
  GameParams p = DefaultSpec().params();
  p.gain_mode = GainMode::kMarkov;
  Eigen::MatrixXd k(2, 2);
  k << 0.7, 0.3, 0.4, 0.6;
  const GameSpec spec(testing::ScalarModel(), ChannelSpec({0.6, 0.8}, k, 0.5),
                      p);
  const GameState s{0, 1, 0};
  const double q = spec.Arrival(0, 0, 1, 0);
  for (const Transition& t : TransitionDistribution(spec, s, 0, 0)) {
    const GameState n = StateOf(spec, t.next);
    const double w = k(1, n.g_s) * k(0, n.g_a);
    EXPECT_NEAR(t.prob, (n.tau == 0 ? q : 1 - q) * w, 1e-15);
  }
}

TEST(GameSpecTest, ArrivalGuardAndValidation) {
  const GameSpec spec = DefaultSpec();
  EXPECT_GT(spec.min_arrival(), 0.30556);
  EXPECT_TRUE(spec.boundedness_guard_holds());
  GameParams p = spec.params();
  p.beta = 1.0;
  EXPECT_THROW(GameSpec(spec.model(), spec.channel(), p), std::invalid_argument);
  p = spec.params();
  p.actions_sensor = {5, 2};
  EXPECT_THROW(GameSpec(spec.model(), spec.channel(), p), std::invalid_argument);
  p = spec.params();
  p.alpha_a = -1;
  EXPECT_THROW(GameSpec(spec.model(), spec.channel(), p), std::invalid_argument);
}

TEST(SimulationTest, PureActionArrivalFrequency) {
  const GameSpec spec = DefaultSpec();
  const int n = spec.num_states();
  const Policy pa(n, MixedStrategy::Pure(2, 1));
  const Policy ps(n, MixedStrategy::Pure(2, 0));
  Rng rng(5);
  const std::vector<TrajectoryStep> traj =
      SimulateTrajectory(spec, pa, ps, 100000, 0, rng);
  double hits = 0, expected = 0;
  for (const TrajectoryStep& st : traj) {
    hits += st.gamma;
    expected += st.q;
    EXPECT_EQ(st.a, 6.0);
    EXPECT_EQ(st.b, 2.0);
  }
  EXPECT_NEAR(hits / traj.size(), expected / traj.size(), 0.01);
}

TEST(SimulationTest, TrajectoryBookkeeping) {
  const GameSpec spec = DefaultSpec();
  const Policy u(spec.num_states(), MixedStrategy::Uniform(2));
  Rng rng(9);
  const std::vector<TrajectoryStep> traj =
      SimulateTrajectory(spec, u, u, 50, 3, rng);
  ASSERT_EQ(traj.size(), 50u);
  EXPECT_EQ(traj[0].state, 3);
  double ret = 0, disc = 1;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const TrajectoryStep& st = traj[i];
    EXPECT_EQ(st.r1, RewardAttacker(spec, st.tau, st.a_index, st.b_index));
    EXPECT_EQ(st.trace_p, spec.steady().trace_table[st.tau]);
    if (i + 1 < traj.size()) {
      EXPECT_EQ(traj[i + 1].tau, st.gamma ? 0 : std::min(st.tau + 1, 4));
    }
    ret += disc * st.r1;
    disc *= spec.beta();
  }
  EXPECT_NEAR(DiscountedReturn(traj, spec.beta()), ret, 1e-12);
  Rng again(9);
  const auto replay = SimulateTrajectory(spec, u, u, 50, 3, again);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    EXPECT_EQ(replay[i].state, traj[i].state);
  }
}

}  // namespace
}  // namespace dosgame
