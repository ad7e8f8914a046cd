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

#include "dosgame/structure.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <gtest/gtest.h>

#include "dosgame/nashq.h"
#include "test_support.h"

namespace dosgame {
namespace {

using testing::DefaultSpec;
using testing::MonotoneSpec;

double Arrival(double ps, double gs, double pa, double ga, double alpha) {
  const double sinr = ps * gs / (pa * ga + 0.5);
  return 1.0 - std::erfc(std::sqrt(alpha * sinr) / std::sqrt(2.0));
}

std::vector<double> SensorValues(const OracleResult& orc) {
  std::vector<double> v;
  for (const EquilibriumResult& e : orc.policies) v.push_back(e.value_p2);
  return v;
}

TEST(OrderTest, StrictPrecedenceNeedsEveryComponent) {
  EXPECT_TRUE(StrictlyPrecedes({0, 0, 0}, {1, 1, 1}));
  EXPECT_FALSE(StrictlyPrecedes({0, 0, 0}, {1, 1, 0}));
  EXPECT_FALSE(StrictlyPrecedes({0, 0, 0}, {0, 1, 1}));
  EXPECT_FALSE(StrictlyPrecedes({1, 1, 1}, {1, 1, 1}));
  const GameSpec spec = DefaultSpec();
  EXPECT_TRUE((StateWindow{1, 2}.Contains(spec, {2, 0, 0})));
  EXPECT_FALSE((StateWindow{1, 2}.Contains(spec, {3, 0, 0})));
  EXPECT_TRUE(StateWindow{}.Contains(spec, {4, 0, 0}));
}

TEST(EpsilonTest, MatchesDirectArrivalRatios) {
  const GameSpec spec = MonotoneSpec();
  const EpsilonReport eps = EpsilonMax(spec);
  ASSERT_EQ(eps.entries.size(), 16u);
  EXPECT_EQ(eps.num_excluded, 0);
  const std::vector<double> g = {0.6, 0.8};
  double best = -std::numeric_limits<double>::infinity();
  for (const EpsilonEntry& e : eps.entries) {
    const EpsilonTuple& t = e.tuple;
    // Uniform marginals cancel in the ratio.
    const double num = Arrival(7, g[t.g_s], 9, g[t.g_a], 2.75) -
                       Arrival(2, g[t.g_s], 3, g[t.g_a], 2.75);
    const double den = Arrival(7, g[t.g_s2], 9, g[t.g_a2], 2.75) -
                       Arrival(2, g[t.g_s2], 3, g[t.g_a2], 2.75);
    EXPECT_NEAR(e.epsilon, num / den, 1e-12);
    best = std::max(best, num / den);
  }
  EXPECT_NEAR(eps.epsilon_max, best, 1e-12);
  EXPECT_NEAR(eps.epsilon_max, 1.1451, 1e-4);
}

TEST(EpsilonTest, ZeroDenominatorsAreExcluded) {
  const GameSpec spec =
      DefaultSpec().WithArrivalTable(std::vector<double>(16, 0.5));
  EXPECT_THROW(EpsilonMax(spec), std::runtime_error);
  GameParams p = DefaultSpec().params();
  p.actions_attacker = {3};
  const GameSpec single(testing::ScalarModel(), DefaultSpec().channel(), p);
  EXPECT_THROW(EpsilonMax(single), std::invalid_argument);
}

TEST(RewardCrossDifferenceTest, ExactlyZeroOnEveryTuple) {
  for (const GameSpec& spec : {DefaultSpec(), MonotoneSpec(),
                               DefaultSpec(0.37, 1.91, 0.6, 1.3)}) {
    const EpsilonReport eps = EpsilonMax(spec);
    for (int m = 0; m < spec.tau_max(); ++m) {
      for (const EpsilonEntry& e : eps.entries) {
        EXPECT_EQ(RewardCrossDifference(spec, m, e.tuple), 0.0);
        // Summing the four rewards directly is zero up to rounding only.
        const EpsilonTuple& t = e.tuple;
        const double naive =
            RewardAttacker(spec, m + 1, t.a1_plus, t.a2_plus) +
            RewardAttacker(spec, m, t.a1_minus, t.a2_minus) -
            RewardAttacker(spec, m + 1, t.a1_minus, t.a2_minus) -
            RewardAttacker(spec, m, t.a1_plus, t.a2_plus);
        EXPECT_LE(std::abs(naive), 1e-13);
      }
    }
  }
}

TEST(HoldingTimeReductionTest, StationaryAverage) {
  const GameSpec spec = DefaultSpec();
  std::vector<double> v(spec.num_states());
  for (int s = 0; s < spec.num_states(); ++s) v[s] = s;
  const std::vector<double> r = ReduceByHoldingTime(spec, v);
  ASSERT_EQ(r.size(), 5u);
  for (int m = 0; m <= 4; ++m) EXPECT_NEAR(r[m], 4 * m + 1.5, 1e-12);
  EXPECT_THROW(ReduceByHoldingTime(spec, {1.0}), std::invalid_argument);
}

TEST(SufficientConditionTest, EngineeredConfigIsCertified) {
  const GameSpec spec = MonotoneSpec();
  const OracleResult orc = ShapleyValueIteration(spec);
  const EpsilonReport eps = EpsilonMax(spec);
  const Theorem3Report r = CheckTheorem3Condition(spec, SensorValues(orc), eps);
  ASSERT_EQ(r.products.size(), 1u);
  EXPECT_EQ(r.products[0].lhs, 21.0);
  EXPECT_EQ(r.products[0].rhs, 18.0);
  EXPECT_TRUE(r.product_holds);
  EXPECT_TRUE(r.ratio_holds[0]);
  EXPECT_TRUE(r.ratio_holds[1]);
  // Saturation at the cap pins the last ratio to one.
  EXPECT_NEAR(r.ratios[2], 1.0, 1e-12);
  EXPECT_EQ(r.threshold, 0);
  ASSERT_TRUE(r.window.has_value());
  EXPECT_EQ(r.window->min_tau, 0);
  EXPECT_EQ(r.window->max_tau, 2);
  EXPECT_TRUE(r.holds);
  EXPECT_GT(r.min_delta2, 0.0);
}

TEST(SufficientConditionTest, ValueCrossDifferenceByHand) {
  const GameSpec spec = MonotoneSpec();
  const std::vector<double> v = {1.0, 3.0, 6.0, 7.0};
  const EpsilonTuple t{0, 0, 1, 1, 1, 0, 1, 0};
  const double gap_lo = 0.25 * (spec.Arrival(1, 1, 0, 0) - spec.Arrival(0, 0, 0, 0));
  const double gap_hi = 0.25 * (spec.Arrival(1, 1, 1, 1) - spec.Arrival(0, 0, 1, 1));
  EXPECT_NEAR(ValueCrossDifference(spec, v, 1, t),
              gap_hi * (1.0 - 7.0) - gap_lo * (1.0 - 6.0), 1e-14);
  // Past the cap the value saturates.
  EXPECT_NEAR(ValueCrossDifference(spec, v, 2, t),
              gap_hi * (1.0 - 7.0) - gap_lo * (1.0 - 7.0), 1e-14);
}

TEST(SufficientConditionTest, DefaultConfigFailsProductCheck) {
  const GameSpec spec = DefaultSpec();
  const OracleResult orc = ShapleyValueIteration(spec);
  const Theorem3Report r =
      CheckTheorem3Condition(spec, SensorValues(orc), EpsilonMax(spec));
  EXPECT_EQ(r.products[0].lhs, 5.0);
  EXPECT_EQ(r.products[0].rhs, 12.0);
  EXPECT_FALSE(r.product_holds);
  EXPECT_FALSE(r.holds);
}

TEST(SupermodularTest, HandBuiltTables) {
  const GameSpec spec = DefaultSpec();
  QTable q(spec.num_states(), 2, 2);
  for (int s = 0; s < spec.num_states(); ++s) {
    const GameState st = StateOf(spec, s);
    const double x = st.tau + st.g_s + st.g_a;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) q.at(2, s, a, b) = x * (a + b);
    }
  }
  const SupermodularReport up = CheckSupermodular(spec, q, 2);
  EXPECT_TRUE(up.holds);
  EXPECT_GT(up.pairs_checked, 0);
  EXPECT_NEAR(up.min_margin, 6.0, 1e-12);
  const SupermodularReport down = CheckSupermodular(spec, q, 1);
  EXPECT_FALSE(down.holds);
  ASSERT_TRUE(down.witness.has_value());
  EXPECT_LE(down.witness->margin, 0.0);
}

TEST(SupermodularTest, OracleTablesOnCertifiedWindow) {
  const GameSpec spec = MonotoneSpec();
  const OracleResult orc = ShapleyValueIteration(spec);
  const Theorem3Report r =
      CheckTheorem3Condition(spec, SensorValues(orc), EpsilonMax(spec));
  ASSERT_TRUE(r.window.has_value());
  const SupermodularReport sensor = CheckSupermodular(spec, orc.q, 2, *r.window);
  EXPECT_TRUE(sensor.holds);
  EXPECT_EQ(sensor.pairs_checked, 3);
  // The attacker's table is the negation, so it is submodular instead.
  EXPECT_FALSE(CheckSupermodular(spec, orc.q, 1, *r.window).holds);
}

TEST(MonotonePolicyTest, OraclePoliciesRiseOnCertifiedWindow) {
  const GameSpec spec = MonotoneSpec();
  const OracleResult orc = ShapleyValueIteration(spec);
  const Theorem3Report r =
      CheckTheorem3Condition(spec, SensorValues(orc), EpsilonMax(spec));
  const MonotoneReport m = CheckMonotonePolicy(spec, orc.policies, *r.window);
  EXPECT_EQ(m.pairs_checked, 3);
  EXPECT_TRUE(m.expected_holds);
  EXPECT_TRUE(m.expected_violations.empty());
}

TEST(MonotonePolicyTest, ReportsViolations) {
  const GameSpec spec = DefaultSpec();
  std::vector<EquilibriumResult> eq(spec.num_states());
  for (int s = 0; s < spec.num_states(); ++s) {
    const int act = StateOf(spec, s).tau >= 2 ? 0 : 1;
    eq[s].strat_p1 = MixedStrategy::Pure(2, act);
    eq[s].strat_p2 = MixedStrategy::Pure(2, act);
  }
  const MonotoneReport m = CheckMonotonePolicy(spec, eq);
  EXPECT_FALSE(m.expected_holds);
  EXPECT_FALSE(m.argmax_holds);
  EXPECT_FALSE(m.expected_violations.empty());
}

}  // namespace
}  // namespace dosgame
