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

// Tabular Nash Q-learning for the attacker-sensor game and the model-based
// value iteration used as its reference solution.

#ifndef DOSGAME_NASHQ_H_
#define DOSGAME_NASHQ_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dosgame/equilibria.h"
#include "dosgame/game.h"
#include "dosgame/random.h"

namespace dosgame {

// Joint-action value tables for both players plus per-cell visit counts.
// Cells are laid out state-major, then attacker action, then sensor action.
class QTable {
 public:
  QTable() = default;
  QTable(int num_states, int num_attacker_actions, int num_sensor_actions);

  int num_states() const { return num_states_; }
  int num_attacker_actions() const { return num_a_; }
  int num_sensor_actions() const { return num_b_; }
  int num_cells() const { return num_states_ * num_a_ * num_b_; }

  int Cell(int s, int a, int b) const { return (s * num_a_ + a) * num_b_ + b; }

  // player is 1 (attacker) or 2 (sensor).
  double& at(int player, int s, int a, int b);
  double at(int player, int s, int a, int b) const;
  std::vector<double>& values(int player) { return player == 1 ? q1_ : q2_; }
  const std::vector<double>& values(int player) const {
    return player == 1 ? q1_ : q2_;
  }
  std::vector<std::int64_t>& visits() { return visits_; }
  const std::vector<std::int64_t>& visits() const { return visits_; }

  // (Q1(s), Q2(s)) as a bimatrix game with the attacker on rows.
  StageGame StageGameAt(int s) const;

  // max over cells of |Q1 + Q2|.
  double MirrorError() const;

 private:
  int num_states_ = 0;
  int num_a_ = 0;
  int num_b_ = 0;
  std::vector<double> q1_;
  std::vector<double> q2_;
  std::vector<std::int64_t> visits_;
};

// max |x - y| over two equally sized tables.
double SupNormDistance(const std::vector<double>& x,
                       const std::vector<double>& y);
double SupNorm(const std::vector<double>& x);

enum class StageSolver {
  kZeroSum,      // maximin LP; the default since rewards are exact negations
  kLemkeHowson,  // SolveStageGame selection, for general-sum use
};

EquilibriumResult SolveStage(const StageGame& game, StageSolver solver);

struct LearnConfig {
  std::int64_t episodes = 50000;
  int steps_per_episode = 20;
  double lr_numerator = 10.0;
  double lr_offset = 15.0;
  double exploration = 0.2;
  std::uint64_t seed = 0;
  StageSolver solver = StageSolver::kZeroSum;
  // Record Q1(s0, ., .) every `curve_every` episodes; 0 disables.
  std::int64_t curve_every = 0;
  // Episodes after which a copy of Q1 is kept.
  std::vector<std::int64_t> checkpoints;

  // Throws std::invalid_argument on out-of-range fields.
  void Validate() const;
  // alpha = lr_numerator / (lr_offset + count).
  double LearningRate(std::int64_t count) const {
    return lr_numerator / (lr_offset + static_cast<double>(count));
  }
};

struct CurvePoint {
  std::int64_t episode = 0;
  std::int64_t step = 0;
  std::vector<double> q1_s0;  // Q1(s0, a, b), a-major
};

struct LearnResult {
  QTable q;
  std::vector<EquilibriumResult> policies;
  std::vector<CurvePoint> curve;
  std::vector<std::pair<std::int64_t, std::vector<double>>> checkpoints;
  std::int64_t steps = 0;
  // Largest |Q1 + Q2| observed right after any update.
  double max_mirror_error = 0.0;
};

// Stage-game failure while learning; carries the state index.
class StageSolveError : public std::runtime_error {
 public:
  StageSolveError(int state, const std::string& what)
      : std::runtime_error("state " + std::to_string(state) + ": " + what),
        state_(state) {}
  int state() const { return state_; }

 private:
  int state_;
};

// Episodic asynchronous Nash Q-learning. Each episode starts in a uniformly
// drawn state; each step plays the current stage-game equilibrium mixed with
// uniform exploration, observes (r1, r2, s') and moves only the visited cell
// of each table toward r + beta * NashQ(s'), where NashQ(s') evaluates the
// stage game at s' under its selected equilibrium.
LearnResult NashQLearn(const GameSpec& spec, const LearnConfig& cfg);

inline constexpr double kOracleTolerance = 1e-10;

struct OracleResult {
  QTable q;
  std::vector<EquilibriumResult> policies;
  std::vector<double> sweep_deltas;  // sup-norm change of each sweep
};

// Jacobi value iteration Q <- r + beta sum_s' Pr(s'|s,a,b) val(s'), with
// val(s') the zero-sum value of the stage game at s'. Stops once a sweep
// moves Q1 by at most `tol`.
OracleResult ShapleyValueIteration(const GameSpec& spec,
                                   double tol = kOracleTolerance,
                                   int max_sweeps = 100000);

// Per-state stage-game equilibria of a complete table.
std::vector<EquilibriumResult> ExtractPolicy(
    const QTable& q, StageSolver solver = StageSolver::kZeroSum);

// Attacker and sensor policies carried by per-state equilibria.
std::pair<Policy, Policy> PoliciesOf(
    const std::vector<EquilibriumResult>& equilibria);

struct ReturnEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Smallest horizon H with beta^H <= eps.
int DiscountHorizon(double beta, double eps = 1e-6);

// Monte-Carlo mean of sum_k beta^k r1_k over `n_rollouts` independent
// rollouts from `start_state`. Requires beta^horizon <= 1e-6.
ReturnEstimate EmpiricalReturn(const GameSpec& spec, const Policy& policy_a,
                               const Policy& policy_s, int start_state,
                               int horizon, int n_rollouts, Rng& rng);

}  // namespace dosgame

#endif  // DOSGAME_NASHQ_H_
