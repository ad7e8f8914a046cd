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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dosgame {

bool StrictlyPrecedes(const GameState& lo, const GameState& hi) {
  return hi.tau > lo.tau && hi.g_s > lo.g_s && hi.g_a > lo.g_a;
}

bool StateWindow::Contains(const GameSpec& spec, const GameState& s) const {
  const int hi = max_tau < 0 ? spec.tau_max() : max_tau;
  return s.tau >= min_tau && s.tau <= hi;
}

namespace {

// u(g_a) u(g_s) [q(a1+, a2+, g_s, g_a) - q(a1-, a2-, g_s, g_a)].
double WeightedArrivalGap(const GameSpec& spec, int g_s, int g_a,
                          const EpsilonTuple& t) {
  const Eigen::VectorXd& mu = spec.stationary();
  return mu(g_a) * mu(g_s) *
         (spec.Arrival(t.a1_plus, t.a2_plus, g_s, g_a) -
          spec.Arrival(t.a1_minus, t.a2_minus, g_s, g_a));
}

double ValueAt(const std::vector<double>& v_tau, int tau) {
  return v_tau[std::min<std::size_t>(tau, v_tau.size() - 1)];
}

template <typename Fn>
void ForEachActionPair(const GameSpec& spec, Fn&& fn) {
  const int nA = spec.num_attacker_actions();
  const int nB = spec.num_sensor_actions();
  for (int a1p = 0; a1p < nA; ++a1p) {
    for (int a1m = 0; a1m < a1p; ++a1m) {
      for (int a2p = 0; a2p < nB; ++a2p) {
        for (int a2m = 0; a2m < a2p; ++a2m) fn(a1p, a1m, a2p, a2m);
      }
    }
  }
}

template <typename Fn>
void ForEachTuple(const GameSpec& spec, Fn&& fn) {
  const int L = spec.num_gains();
  ForEachActionPair(spec, [&](int a1p, int a1m, int a2p, int a2m) {
    for (int gs = 0; gs < L; ++gs) {
      for (int ga = 0; ga < L; ++ga) {
        for (int gs2 = 0; gs2 < L; ++gs2) {
          for (int ga2 = 0; ga2 < L; ++ga2) {
            fn(EpsilonTuple{gs, ga, gs2, ga2, a1p, a1m, a2p, a2m});
          }
        }
      }
    }
  });
}

}  // namespace

EpsilonReport EpsilonMax(const GameSpec& spec) {
  if (spec.num_attacker_actions() < 2 || spec.num_sensor_actions() < 2) {
    throw std::invalid_argument("epsilon needs at least two actions each");
  }
  EpsilonReport report;
  report.epsilon_max = -std::numeric_limits<double>::infinity();
  ForEachTuple(spec, [&](const EpsilonTuple& t) {
    EpsilonEntry e;
    e.tuple = t;
    e.numerator = WeightedArrivalGap(spec, t.g_s, t.g_a, t);
    e.denominator = WeightedArrivalGap(spec, t.g_s2, t.g_a2, t);
    if (e.denominator == 0.0) {
      e.excluded = true;
      ++report.num_excluded;
    } else {
      e.epsilon = e.numerator / e.denominator;
      report.epsilon_max = std::max(report.epsilon_max, e.epsilon);
    }
    report.entries.push_back(e);
  });
  if (report.num_excluded == static_cast<int>(report.entries.size())) {
    throw std::runtime_error("every epsilon denominator is zero");
  }
  return report;
}

double RewardCrossDifference(const GameSpec& spec, int m,
                             const EpsilonTuple& t) {
  const RewardTerms hp = RewardAttackerTerms(spec, m + 1, t.a1_plus, t.a2_plus);
  const RewardTerms lm = RewardAttackerTerms(spec, m, t.a1_minus, t.a2_minus);
  const RewardTerms hm =
      RewardAttackerTerms(spec, m + 1, t.a1_minus, t.a2_minus);
  const RewardTerms lp = RewardAttackerTerms(spec, m, t.a1_plus, t.a2_plus);
  // Like terms are grouped so that each cancellation is exact in floating
  // point; summing the four rewards directly leaves rounding residue.
  return ((hp.trace - hm.trace) + (lm.trace - lp.trace)) +
         ((hp.energy - lp.energy) + (lm.energy - hm.energy));
}

double ValueCrossDifference(const GameSpec& spec,
                            const std::vector<double>& v_tau, int m,
                            const EpsilonTuple& t) {
  const double v0 = ValueAt(v_tau, 0);
  return WeightedArrivalGap(spec, t.g_s2, t.g_a2, t) *
             (v0 - ValueAt(v_tau, m + 2)) -
         WeightedArrivalGap(spec, t.g_s, t.g_a, t) *
             (v0 - ValueAt(v_tau, m + 1));
}

std::vector<double> ReduceByHoldingTime(const GameSpec& spec,
                                        const std::vector<double>& v_state) {
  if (static_cast<int>(v_state.size()) != spec.num_states()) {
    throw std::invalid_argument("one value per state expected");
  }
  const Eigen::VectorXd& mu = spec.stationary();
  std::vector<double> v(spec.tau_max() + 1, 0.0);
  for (int s = 0; s < spec.num_states(); ++s) {
    const GameState st = StateOf(spec, s);
    v[st.tau] += mu(st.g_s) * mu(st.g_a) * v_state[s];
  }
  return v;
}

SupermodularReport CheckSupermodular(const GameSpec& spec, const QTable& q,
                                     int player, const StateWindow& window) {
  const int nA = q.num_attacker_actions();
  const int nB = q.num_sensor_actions();
  SupermodularReport report;
  report.min_margin = std::numeric_limits<double>::infinity();
  const std::vector<GameState> states = EnumerateStates(spec);
  for (int lo = 0; lo < spec.num_states(); ++lo) {
    if (!window.Contains(spec, states[lo])) continue;
    for (int hi = 0; hi < spec.num_states(); ++hi) {
      if (!window.Contains(spec, states[hi]) ||
          !StrictlyPrecedes(states[lo], states[hi])) {
        continue;
      }
      for (int a_hi = 0; a_hi < nA; ++a_hi) {
        for (int a_lo = 0; a_lo < a_hi; ++a_lo) {
          for (int b_hi = 0; b_hi < nB; ++b_hi) {
            for (int b_lo = 0; b_lo < b_hi; ++b_lo) {
              const double margin = q.at(player, hi, a_hi, b_hi) +
                                    q.at(player, lo, a_lo, b_lo) -
                                    q.at(player, hi, a_lo, b_lo) -
                                    q.at(player, lo, a_hi, b_hi);
              ++report.pairs_checked;
              report.min_margin = std::min(report.min_margin, margin);
              if (!(margin > 0.0) && !report.witness) {
                report.holds = false;
                report.witness =
                    SupermodularWitness{lo, hi, a_lo, a_hi, b_lo, b_hi, margin};
              }
            }
          }
        }
      }
    }
  }
  if (report.pairs_checked == 0) report.min_margin = 0.0;
  return report;
}

Theorem3Report CheckTheorem3Condition(const GameSpec& spec,
                                      const std::vector<double>& v_state,
                                      const EpsilonReport& eps) {
  Theorem3Report r;
  r.epsilon_max = eps.epsilon_max;
  r.v_tau = ReduceByHoldingTime(spec, v_state);
  const int tau_max = spec.tau_max();
  const double v0 = r.v_tau[0];
  for (int m = 0; m < tau_max; ++m) {
    const double den = v0 - ValueAt(r.v_tau, m + 1);
    const double num = v0 - ValueAt(r.v_tau, m + 2);
    const bool undefined = den == 0.0;
    const double ratio =
        undefined ? std::numeric_limits<double>::quiet_NaN() : num / den;
    r.ratios.push_back(ratio);
    r.undefined.push_back(undefined);
    r.ratio_holds.push_back(!undefined && ratio > eps.epsilon_max);
  }

  r.product_holds = true;
  const auto& pa = spec.actions_attacker();
  const auto& ps = spec.actions_sensor();
  ForEachActionPair(spec, [&](int a1p, int a1m, int a2p, int a2m) {
    ProductCheck p{a1p, a1m, a2p, a2m, ps[a2p] * pa[a1m], ps[a2m] * pa[a1p]};
    r.product_holds = r.product_holds && p.lhs >= p.rhs;
    r.products.push_back(p);
  });

  // The final holding time is excluded: saturation forces its ratio to 1.
  const int last = tau_max - 2;
  for (int m = last; m >= 0 && r.ratio_holds[m]; --m) r.threshold = m;
  if (r.threshold < 0 || !r.product_holds) return r;

  r.window = StateWindow{r.threshold, tau_max - 1};
  for (int s = 0; s < spec.num_states(); ++s) {
    if (r.window->Contains(spec, StateOf(spec, s))) {
      r.certified_states.push_back(s);
    }
  }
  r.min_delta2 = std::numeric_limits<double>::infinity();
  for (int m = r.threshold; m <= last; ++m) {
    ForEachTuple(spec, [&](const EpsilonTuple& t) {
      r.min_delta2 =
          std::min(r.min_delta2, ValueCrossDifference(spec, r.v_tau, m, t));
    });
  }
  r.holds = true;
  return r;
}

MonotoneReport CheckMonotonePolicy(const GameSpec& spec,
                                   const std::vector<EquilibriumResult>& eq,
                                   const StateWindow& window) {
  if (static_cast<int>(eq.size()) != spec.num_states()) {
    throw std::invalid_argument("one equilibrium per state expected");
  }
  const std::vector<GameState> states = EnumerateStates(spec);
  auto expected = [&](int player, int s) {
    return player == 1
               ? eq[s].strat_p1.Expectation(spec.actions_attacker())
               : eq[s].strat_p2.Expectation(spec.actions_sensor());
  };
  auto argmax = [&](int player, int s) {
    return player == 1 ? spec.actions_attacker()[eq[s].strat_p1.ArgMax()]
                       : spec.actions_sensor()[eq[s].strat_p2.ArgMax()];
  };
  MonotoneReport report;
  for (int lo = 0; lo < spec.num_states(); ++lo) {
    if (!window.Contains(spec, states[lo])) continue;
    for (int hi = 0; hi < spec.num_states(); ++hi) {
      if (!window.Contains(spec, states[hi]) ||
          !StrictlyPrecedes(states[lo], states[hi])) {
        continue;
      }
      ++report.pairs_checked;
      for (int player : {1, 2}) {
        const double e_lo = expected(player, lo), e_hi = expected(player, hi);
        if (!(e_hi > e_lo)) {
          report.expected_holds = false;
          report.expected_violations.push_back({player, lo, hi, e_lo, e_hi});
        }
        const double m_lo = argmax(player, lo), m_hi = argmax(player, hi);
        if (!(m_hi > m_lo)) {
          report.argmax_holds = false;
          report.argmax_violations.push_back({player, lo, hi, m_lo, m_hi});
        }
      }
    }
  }
  return report;
}

}  // namespace dosgame
