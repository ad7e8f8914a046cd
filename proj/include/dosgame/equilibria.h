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

// Two-player finite (bimatrix) games: Lemke-Howson pivoting, the maximin
// linear program for zero-sum games, exhaustive support enumeration, and the
// deviation-gap certificate used to accept any of their outputs.

#ifndef DOSGAME_EQUILIBRIA_H_
#define DOSGAME_EQUILIBRIA_H_

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dosgame {

inline constexpr double kNormalizationTol = 1e-12;
inline constexpr double kCertificationTol = 1e-8;
inline constexpr double kValueCrossCheckTol = 1e-7;
inline constexpr double kZeroSumTol = 1e-9;

// Largest action count accepted by SupportEnumeration.
inline constexpr int kSupportEnumerationMaxActions = 5;

class StageGame {
 public:
  StageGame(Eigen::MatrixXd payoff_p1, Eigen::MatrixXd payoff_p2);

  // payoff_p2 = -payoff_p1.
  static StageGame ZeroSum(const Eigen::MatrixXd& payoff_p1);

  const Eigen::MatrixXd& payoff_p1() const { return payoff_p1_; }
  const Eigen::MatrixXd& payoff_p2() const { return payoff_p2_; }
  int rows() const { return static_cast<int>(payoff_p1_.rows()); }
  int cols() const { return static_cast<int>(payoff_p1_.cols()); }
  bool zero_sum() const { return zero_sum_; }

 private:
  Eigen::MatrixXd payoff_p1_;
  Eigen::MatrixXd payoff_p2_;
  bool zero_sum_;
};

struct MixedStrategy {
  Eigen::VectorXd probs;

  static MixedStrategy Pure(int size, int action);
  static MixedStrategy Uniform(int size);

  int size() const { return static_cast<int>(probs.size()); }
  // Nonnegative entries summing to one within kNormalizationTol.
  bool IsValid() const;
  // Expected value of `action_values` under this mix.
  double Expectation(const std::vector<double>& action_values) const;
  // Index of the largest probability (lowest index on ties).
  int ArgMax() const;
};

struct EquilibriumResult {
  MixedStrategy strat_p1;
  MixedStrategy strat_p2;
  double value_p1 = 0.0;
  double value_p2 = 0.0;
  double deviation_gap = 0.0;
  std::string method;
};

// Thrown by LemkeHowson when the pivot budget 10 (m + n)^2 is exhausted.
class PivotBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest gain either player obtains by a unilateral pure deviation.
double DeviationGap(const StageGame& game, const MixedStrategy& s1,
                    const MixedStrategy& s2);

// Fills values and deviation gap for a strategy pair.
EquilibriumResult Evaluate(const StageGame& game, MixedStrategy s1,
                           MixedStrategy s2, std::string method);

// Follows the complementary pivoting path that starts by dropping
// `initial_label` (0..m-1 for row actions, m..m+n-1 for column actions).
// Payoffs are shifted positive internally; values and the gap refer to the
// original matrices. Ties in the ratio test are broken lexicographically.
EquilibriumResult LemkeHowson(const StageGame& game, int initial_label);

// Solves the row player's maximin LP on payoff_p1 and the column player's on
// payoff_p2' independently. Throws std::invalid_argument for general-sum
// games and std::logic_error if the two values fail to cross-check.
EquilibriumResult ZeroSumValue(const StageGame& game);

// Every equilibrium supported on equal-size action sets whose indifference
// system is nonsingular. Exponential; requires m, n <= 5.
std::vector<EquilibriumResult> SupportEnumeration(const StageGame& game);

// Deterministic equilibrium selection: the Lemke-Howson run with the smallest
// initial label whose output certifies; if none does, the LP for zero-sum
// games, then support enumeration for small games.
EquilibriumResult SolveStageGame(const StageGame& game);

// Maximin strategy and value of the row player of `payoff` via the simplex
// method.
struct MaximinSolution {
  Eigen::VectorXd strategy;
  double value = 0.0;
};
MaximinSolution SolveMaximin(const Eigen::MatrixXd& payoff);

}  // namespace dosgame

#endif  // DOSGAME_EQUILIBRIA_H_
