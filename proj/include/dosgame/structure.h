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

// Brute-force checks of the monotone structure of equilibrium policies:
// strict supermodularity of joint-action values, the epsilon bound on
// arrival-probability differences and the value-gap ratio condition.

#ifndef DOSGAME_STRUCTURE_H_
#define DOSGAME_STRUCTURE_H_

#include <optional>
#include <vector>

#include "dosgame/equilibria.h"
#include "dosgame/game.h"
#include "dosgame/nashq.h"

namespace dosgame {

// hi is strictly greater than lo in every coordinate (tau, g_s, g_a).
bool StrictlyPrecedes(const GameState& lo, const GameState& hi);

// Restricts checks to states whose holding time lies in [min_tau, max_tau].
// A negative max_tau means tau_max.
struct StateWindow {
  int min_tau = 0;
  int max_tau = -1;

  bool Contains(const GameSpec& spec, const GameState& s) const;
};

// One enumerated tuple (g_s, g_a, g'_s, g'_a, a1+ > a1-, a2+ > a2-). Gains
// and actions are indices; a1 is the attacker, a2 the sensor.
struct EpsilonTuple {
  int g_s = 0;
  int g_a = 0;
  int g_s2 = 0;
  int g_a2 = 0;
  int a1_plus = 0;
  int a1_minus = 0;
  int a2_plus = 0;
  int a2_minus = 0;
};

struct EpsilonEntry {
  EpsilonTuple tuple;
  double numerator = 0.0;    // u(g_a) u(g_s) [q+ - q-] at (g_s, g_a)
  double denominator = 0.0;  // same at (g'_s, g'_a)
  double epsilon = 0.0;      // numerator / denominator; unset if excluded
  bool excluded = false;     // zero denominator
};

struct EpsilonReport {
  std::vector<EpsilonEntry> entries;
  double epsilon_max = 0.0;
  int num_excluded = 0;
};

// Enumerates every tuple and takes the max over entries with a nonzero
// denominator. Throws std::invalid_argument if an action set has fewer than
// two elements and std::runtime_error if every denominator is zero.
EpsilonReport EpsilonMax(const GameSpec& spec);

// r(m+1, a+) + r(m, a-) - r(m+1, a-) - r(m, a+) for the attacker reward,
// assembled term by term from RewardAttackerTerms.
double RewardCrossDifference(const GameSpec& spec, int m,
                             const EpsilonTuple& t);

// u(g')[q+ - q-](g') [v(0) - v(m+2)] - u(g)[q+ - q-](g) [v(0) - v(m+1)],
// with v indexed by holding time and saturated at tau_max.
double ValueCrossDifference(const GameSpec& spec,
                            const std::vector<double>& v_tau, int m,
                            const EpsilonTuple& t);

// Per-holding-time values: v(tau) = sum_{g_s, g_a} mu(g_s) mu(g_a) v(s).
std::vector<double> ReduceByHoldingTime(const GameSpec& spec,
                                        const std::vector<double>& v_state);

struct SupermodularWitness {
  int s_lo = 0;
  int s_hi = 0;
  int a_lo = 0;
  int a_hi = 0;
  int b_lo = 0;
  int b_hi = 0;
  double margin = 0.0;  // Q(s_hi, a+) + Q(s_lo, a-) - Q(s_hi, a-) - Q(s_lo, a+)
};

struct SupermodularReport {
  bool holds = true;
  long pairs_checked = 0;
  double min_margin = 0.0;
  std::optional<SupermodularWitness> witness;  // first violation
};

// Two-block lattice (state, joint action): for every state pair s_lo < s_hi
// inside `window` and every joint action pair a- < a+ (both coordinates
// strictly larger), requires
//   Q(s_hi, a+) + Q(s_lo, a-) > Q(s_hi, a-) + Q(s_lo, a+).
SupermodularReport CheckSupermodular(const GameSpec& spec, const QTable& q,
                                     int player,
                                     const StateWindow& window = {});

struct ProductCheck {
  int a1_plus = 0;
  int a1_minus = 0;
  int a2_plus = 0;
  int a2_minus = 0;
  double lhs = 0.0;  // a2+ a1-
  double rhs = 0.0;  // a2- a1+
};

struct Theorem3Report {
  double epsilon_max = 0.0;
  std::vector<double> v_tau;
  // Entry m (0 <= m < tau_max) holds the value-gap ratio; `undefined` marks
  // v(0) == v(m+1). The last entry is 1 by saturation.
  std::vector<double> ratios;
  std::vector<bool> undefined;
  std::vector<bool> ratio_holds;
  std::vector<ProductCheck> products;
  bool product_holds = false;
  // Smallest m from which the ratio condition holds up to tau_max - 2, or -1.
  int threshold = -1;
  // Certified region: states with threshold <= tau <= tau_max - 1.
  std::optional<StateWindow> window;
  std::vector<int> certified_states;
  // Smallest assembled value cross-difference over all tuples and certified
  // m; positive when the sufficient condition is effective.
  double min_delta2 = 0.0;
  bool holds = false;
};

// `v_state` holds one player's per-state equilibrium values.
Theorem3Report CheckTheorem3Condition(const GameSpec& spec,
                                      const std::vector<double>& v_state,
                                      const EpsilonReport& eps);

struct MonotoneViolation {
  int player = 0;
  int s_lo = 0;
  int s_hi = 0;
  double summary_lo = 0.0;
  double summary_hi = 0.0;
};

struct MonotoneReport {
  long pairs_checked = 0;
  bool expected_holds = true;
  bool argmax_holds = true;
  std::vector<MonotoneViolation> expected_violations;
  std::vector<MonotoneViolation> argmax_violations;
};

// For every state pair s_lo < s_hi inside `window`, both players' action
// summaries must strictly increase. Two summaries are tested separately: the
// expected action under the mix and the action of largest probability.
MonotoneReport CheckMonotonePolicy(const GameSpec& spec,
                                   const std::vector<EquilibriumResult>& eq,
                                   const StateWindow& window = {});

}  // namespace dosgame

#endif  // DOSGAME_STRUCTURE_H_
