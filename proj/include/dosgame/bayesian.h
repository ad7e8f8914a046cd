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

// The static game with private channel gains. Each player knows only its own
// gain (its type) and holds a common-prior belief over the opponent's gain.

#ifndef DOSGAME_BAYESIAN_H_
#define DOSGAME_BAYESIAN_H_

#include <vector>

#include <Eigen/Dense>

#include "dosgame/equilibria.h"
#include "dosgame/game.h"

namespace dosgame {

inline constexpr int kMaxTypeContingentStrategies = 64;

enum class BeliefMode {
  kStationary,  // Pr(g_s, g_a) = mu(g_s) mu(g_a)
  kKernel,      // Pr(g_s, g_a) = mu(g_s) Pi(g_a | g_s)
};

enum class BayesPayoff {
  kImmediate,     // r1(m, a, b); does not depend on the gains
  kExpectedNext,  // r1 + beta [q Tr(P) + (1 - q) Tr(h^{m+1}(P))]
  kLookahead,     // r1 + beta [q v(0) + (1 - q) v(m+1)], v from the oracle
};

// Attacker types index its own gain g_a, sensor types its own gain g_s.
// payoff[i][j] is the attacker's payoff matrix (rows: attacker actions,
// columns: sensor actions) when the sensor has type i and the attacker j.
// The sensor receives the negation.
class BayesianSpec {
 public:
  BayesianSpec(Eigen::MatrixXd belief,
               std::vector<std::vector<Eigen::MatrixXd>> payoff);

  int num_sensor_types() const { return static_cast<int>(belief_.rows()); }
  int num_attacker_types() const { return static_cast<int>(belief_.cols()); }
  int num_attacker_actions() const;
  int num_sensor_actions() const;
  const Eigen::MatrixXd& belief() const { return belief_; }
  const Eigen::MatrixXd& payoff(int sensor_type, int attacker_type) const {
    return payoff_[sensor_type][attacker_type];
  }

 private:
  Eigen::MatrixXd belief_;  // rows: sensor type, columns: attacker type
  std::vector<std::vector<Eigen::MatrixXd>> payoff_;
};

// Builds the spec at holding time m from a game. For kLookahead, `v_tau`
// holds the attacker's oracle values per holding time.
BayesianSpec MakeBayesianSpec(const GameSpec& game, int m, BeliefMode belief,
                              BayesPayoff payoff,
                              const std::vector<double>& v_tau = {});

// One mix per own type.
struct TypeStrategy {
  std::vector<MixedStrategy> per_type;
};

// Rows (columns) are the attacker's (sensor's) maps from own type to action,
// enumerated with the lowest type as the fastest-varying digit. Entries are
// belief-weighted attacker payoffs. Throws std::length_error if either side
// exceeds kMaxTypeContingentStrategies.
Eigen::MatrixXd ExpandMatrix(const BayesianSpec& spec);

// Action taken by type `type` under the pure map `map_index`.
int MapAction(int map_index, int type, int num_actions);

struct BayesianSolution {
  TypeStrategy attacker;
  TypeStrategy sensor;
  double value = 0.0;  // attacker's ex-ante value
  double deviation_gap = 0.0;
  EquilibriumResult expanded;
};

// Solves the expanded zero-sum matrix game and marginalizes each player's
// mix over maps into per-type action distributions.
BayesianSolution SolveBayesian(const BayesianSpec& spec);

// Ex-ante attacker payoff of a type-strategy pair.
double BayesExpectedPayoff(const BayesianSpec& spec, const TypeStrategy& s1,
                           const TypeStrategy& s2);

// Largest gain any type of either player can secure by a pure deviation,
// evaluated in conditional expectation over the opponent's type.
double BayesDeviationGap(const BayesianSpec& spec, const TypeStrategy& s1,
                         const TypeStrategy& s2);

}  // namespace dosgame

#endif  // DOSGAME_BAYESIAN_H_
