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

#include "dosgame/equilibria.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <Eigen/LU>

namespace dosgame {
namespace {

constexpr double kPivotTol = 1e-12;

// Dense tableau whose columns are indexed by variable label, with the right
// hand side in the last column.
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<int> basis;  // label of the basic variable in each row

  int rhs_col() const { return static_cast<int>(t.cols()) - 1; }

  void Pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int r = 0; r < t.rows(); ++r) {
      if (r == row) continue;
      const double f = t(r, col);
      if (f != 0.0) t.row(r) -= f * t.row(row);
    }
    basis[row] = col;
  }
};

// Lexicographic minimum ratio test for entering column `col`. `lex_cols`
// are the columns of the initial identity basis.
int LexMinRatioRow(const Tableau& tab, int col,
                   const std::vector<int>& lex_cols) {
  int best = -1;
  for (int r = 0; r < tab.t.rows(); ++r) {
    if (tab.t(r, col) <= kPivotTol) continue;
    if (best < 0) {
      best = r;
      continue;
    }
    const double pr = tab.t(r, col);
    const double pb = tab.t(best, col);
    auto cmp = [&](int c) { return tab.t(r, c) / pr - tab.t(best, c) / pb; };
    double d = cmp(tab.rhs_col());
    for (std::size_t k = 0; std::abs(d) <= kPivotTol && k < lex_cols.size();
         ++k) {
      d = cmp(lex_cols[k]);
    }
    if (d < -kPivotTol) best = r;
  }
  return best;
}

Eigen::MatrixXd ShiftPositive(const Eigen::MatrixXd& M) {
  return (M.array() - M.minCoeff() + 1.0).matrix();
}

Eigen::VectorXd Normalized(Eigen::VectorXd v) {
  v = v.cwiseMax(0.0);
  const double s = v.sum();
  if (!(s > 0.0)) throw std::logic_error("degenerate strategy vector");
  return v / s;
}

}  // namespace

StageGame::StageGame(Eigen::MatrixXd payoff_p1, Eigen::MatrixXd payoff_p2)
    : payoff_p1_(std::move(payoff_p1)), payoff_p2_(std::move(payoff_p2)) {
  if (payoff_p1_.rows() == 0 || payoff_p1_.cols() == 0) {
    throw std::invalid_argument("stage game must have at least one action");
  }
  if (payoff_p1_.rows() != payoff_p2_.rows() ||
      payoff_p1_.cols() != payoff_p2_.cols()) {
    throw std::invalid_argument("payoff matrices must have equal shapes");
  }
  if (!payoff_p1_.allFinite() || !payoff_p2_.allFinite()) {
    throw std::invalid_argument("payoffs must be finite");
  }
  zero_sum_ = (payoff_p1_ + payoff_p2_).cwiseAbs().maxCoeff() <= kZeroSumTol;
}

StageGame StageGame::ZeroSum(const Eigen::MatrixXd& payoff_p1) {
  return StageGame(payoff_p1, -payoff_p1);
}

MixedStrategy MixedStrategy::Pure(int size, int action) {
  MixedStrategy s{Eigen::VectorXd::Zero(size)};
  s.probs(action) = 1.0;
  return s;
}

MixedStrategy MixedStrategy::Uniform(int size) {
  return {Eigen::VectorXd::Constant(size, 1.0 / size)};
}

bool MixedStrategy::IsValid() const {
  return probs.size() > 0 && (probs.array() >= 0.0).all() &&
         std::abs(probs.sum() - 1.0) <= kNormalizationTol;
}

double MixedStrategy::Expectation(
    const std::vector<double>& action_values) const {
  if (static_cast<int>(action_values.size()) != size()) {
    throw std::invalid_argument("action values do not match strategy size");
  }
  double e = 0.0;
  for (int i = 0; i < size(); ++i) e += probs(i) * action_values[i];
  return e;
}

int MixedStrategy::ArgMax() const {
  int best = 0;
  for (int i = 1; i < size(); ++i) {
    if (probs(i) > probs(best)) best = i;
  }
  return best;
}

double DeviationGap(const StageGame& game, const MixedStrategy& s1,
                    const MixedStrategy& s2) {
  if (s1.size() != game.rows() || s2.size() != game.cols()) {
    throw std::invalid_argument("strategy sizes do not match the game");
  }
  const Eigen::VectorXd row_payoffs = game.payoff_p1() * s2.probs;
  const Eigen::VectorXd col_payoffs =
      game.payoff_p2().transpose() * s1.probs;
  const double gap1 = row_payoffs.maxCoeff() - s1.probs.dot(row_payoffs);
  const double gap2 = col_payoffs.maxCoeff() - s2.probs.dot(col_payoffs);
  return std::max({gap1, gap2, 0.0});
}

EquilibriumResult Evaluate(const StageGame& game, MixedStrategy s1,
                           MixedStrategy s2, std::string method) {
  EquilibriumResult res;
  res.value_p1 = s1.probs.dot(game.payoff_p1() * s2.probs);
  res.value_p2 = s1.probs.dot(game.payoff_p2() * s2.probs);
  res.deviation_gap = DeviationGap(game, s1, s2);
  res.strat_p1 = std::move(s1);
  res.strat_p2 = std::move(s2);
  res.method = std::move(method);
  return res;
}

EquilibriumResult LemkeHowson(const StageGame& game, int initial_label) {
  const int m = game.rows();
  const int n = game.cols();
  if (initial_label < 0 || initial_label >= m + n) {
    throw std::out_of_range("initial label outside [0, m + n)");
  }
  const Eigen::MatrixXd A = ShiftPositive(game.payoff_p1());
  const Eigen::MatrixXd B = ShiftPositive(game.payoff_p2());

  // Row polytope: B' x + s = 1 over labels x_i -> i, s_j -> m + j.
  Tableau row_tab{Eigen::MatrixXd::Zero(n, m + n + 1), {}};
  row_tab.t.leftCols(m) = B.transpose();
  row_tab.t.block(0, m, n, n).setIdentity();
  row_tab.t.col(m + n).setOnes();
  std::vector<int> row_lex(n);
  for (int j = 0; j < n; ++j) {
    row_tab.basis.push_back(m + j);
    row_lex[j] = m + j;
  }

  // Column polytope: r + A y = 1 over labels r_i -> i, y_j -> m + j.
  Tableau col_tab{Eigen::MatrixXd::Zero(m, m + n + 1), {}};
  col_tab.t.leftCols(m).setIdentity();
  col_tab.t.block(0, m, m, n) = A;
  col_tab.t.col(m + n).setOnes();
  std::vector<int> col_lex(m);
  for (int i = 0; i < m; ++i) {
    col_tab.basis.push_back(i);
    col_lex[i] = i;
  }

  const long budget = 10L * (m + n) * (m + n);
  int entering = initial_label;
  // Row-player labels enter the row polytope first, column labels the
  // column polytope; the two then alternate.
  bool in_row = initial_label < m;
  for (long pivots = 0;; ++pivots) {
    if (pivots >= budget) {
      throw PivotBudgetExceeded("Lemke-Howson exceeded " +
                                std::to_string(budget) + " pivots");
    }
    Tableau& tab = in_row ? row_tab : col_tab;
    const int row =
        LexMinRatioRow(tab, entering, in_row ? row_lex : col_lex);
    if (row < 0) throw std::logic_error("Lemke-Howson ray termination");
    const int leaving = tab.basis[row];
    tab.Pivot(row, entering);
    if (leaving == initial_label) break;
    entering = leaving;
    in_row = !in_row;
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
  for (int r = 0; r < n; ++r) {
    const int label = row_tab.basis[r];
    if (label < m) x(label) = row_tab.t(r, m + n);
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < m; ++r) {
    const int label = col_tab.basis[r];
    if (label >= m) y(label - m) = col_tab.t(r, m + n);
  }
  return Evaluate(game, {Normalized(x)}, {Normalized(y)},
                  "lemke-howson(label " + std::to_string(initial_label) + ")");
}

MaximinSolution SolveMaximin(const Eigen::MatrixXd& payoff) {
  const int m = static_cast<int>(payoff.rows());
  const int n = static_cast<int>(payoff.cols());
  const double shift = 1.0 - payoff.minCoeff();
  // max 1'w s.t. (M + shift) w <= 1, w >= 0. Columns: w (n), slacks (m).
  Tableau tab{Eigen::MatrixXd::Zero(m, n + m + 1), {}};
  tab.t.leftCols(n) = (payoff.array() + shift).matrix();
  tab.t.block(0, n, m, m).setIdentity();
  tab.t.col(n + m).setOnes();
  for (int i = 0; i < m; ++i) tab.basis.push_back(n + i);
  Eigen::RowVectorXd z = Eigen::RowVectorXd::Zero(n + m + 1);
  z.head(n).setConstant(-1.0);

  // Bland's rule: never cycles.
  const int max_pivots = 1000 * (m + n);
  for (int it = 0;; ++it) {
    if (it > max_pivots) throw std::logic_error("simplex failed to terminate");
    int entering = -1;
    for (int j = 0; j < n + m; ++j) {
      if (z(j) < -kPivotTol) {
        entering = j;
        break;
      }
    }
    if (entering < 0) break;
    int row = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m; ++r) {
      const double a = tab.t(r, entering);
      if (a <= kPivotTol) continue;
      const double ratio = tab.t(r, n + m) / a;
      const bool tie = row >= 0 && ratio <= best_ratio + kPivotTol;
      if (ratio < best_ratio - kPivotTol ||
          (tie && tab.basis[r] < tab.basis[row])) {
        best_ratio = std::min(best_ratio, ratio);
        row = r;
      }
    }
    if (row < 0) throw std::logic_error("maximin LP unbounded");
    tab.Pivot(row, entering);
    z -= z(entering) * tab.t.row(row);
  }

  const double total = z(n + m);  // = 1 / (value + shift)
  if (!(total > 0.0)) throw std::logic_error("maximin LP degenerate optimum");
  MaximinSolution sol;
  sol.strategy = Normalized(z.segment(n, m).transpose());
  sol.value = 1.0 / total - shift;
  return sol;
}

EquilibriumResult ZeroSumValue(const StageGame& game) {
  if (!game.zero_sum()) {
    throw std::invalid_argument("ZeroSumValue requires a zero-sum game");
  }
  const MaximinSolution row = SolveMaximin(game.payoff_p1());
  const MaximinSolution col = SolveMaximin(game.payoff_p2().transpose());
  const double scale = std::max(1.0, std::abs(row.value));
  if (std::abs(row.value + col.value) > kZeroSumTol * scale) {
    throw std::logic_error("maximin and minimax values disagree");
  }
  return Evaluate(game, {row.strategy}, {col.strategy}, "linear-program");
}

namespace {

// Mix over `support` (bitmask over own actions) that makes the opponent
// indifferent across `opp_support`. `payoff` is the opponent's matrix with
// own actions on rows.
bool SolveIndifference(const Eigen::MatrixXd& payoff, unsigned support,
                       unsigned opp_support, Eigen::VectorXd* mix) {
  std::vector<int> own, opp;
  for (int i = 0; i < payoff.rows(); ++i) {
    if (support & (1u << i)) own.push_back(i);
  }
  for (int j = 0; j < payoff.cols(); ++j) {
    if (opp_support & (1u << j)) opp.push_back(j);
  }
  const int k = static_cast<int>(own.size());
  // Unknowns: mix over `own` followed by the opponent's common payoff v.
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(k + 1, k + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) M(r, c) = payoff(own[c], opp[r]);
    M(r, k) = -1.0;
  }
  M.row(k).head(k).setOnes();
  rhs(k) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible()) return false;
  const Eigen::VectorXd sol = lu.solve(rhs);
  *mix = Eigen::VectorXd::Zero(payoff.rows());
  for (int c = 0; c < k; ++c) {
    if (sol(c) < -kNormalizationTol) return false;
    (*mix)(own[c]) = std::max(sol(c), 0.0);
  }
  return true;
}

bool SameProfile(const EquilibriumResult& a, const EquilibriumResult& b) {
  return (a.strat_p1.probs - b.strat_p1.probs).cwiseAbs().maxCoeff() <= 1e-9 &&
         (a.strat_p2.probs - b.strat_p2.probs).cwiseAbs().maxCoeff() <= 1e-9;
}

}  // namespace

std::vector<EquilibriumResult> SupportEnumeration(const StageGame& game) {
  const int m = game.rows();
  const int n = game.cols();
  if (m > kSupportEnumerationMaxActions || n > kSupportEnumerationMaxActions) {
    throw std::invalid_argument("support enumeration limited to 5x5 games");
  }
  std::vector<EquilibriumResult> found;
  for (int k = 1; k <= std::min(m, n); ++k) {
    for (unsigned I = 1; I < (1u << m); ++I) {
      if (std::popcount(I) != k) continue;
      for (unsigned J = 1; J < (1u << n); ++J) {
        if (std::popcount(J) != k) continue;
        Eigen::VectorXd x, y;
        // x leaves the column player indifferent on J and vice versa.
        if (!SolveIndifference(game.payoff_p2(), I, J, &x)) continue;
        if (!SolveIndifference(game.payoff_p1().transpose(), J, I, &y)) {
          continue;
        }
        if (!(x.sum() > 0.0) || !(y.sum() > 0.0)) continue;
        EquilibriumResult res = Evaluate(game, {x / x.sum()}, {y / y.sum()},
                                         "support-enumeration");
        if (res.deviation_gap > kCertificationTol) continue;
        const bool duplicate = std::any_of(
            found.begin(), found.end(),
            [&](const EquilibriumResult& f) { return SameProfile(f, res); });
        if (!duplicate) found.push_back(std::move(res));
      }
    }
  }
  return found;
}

EquilibriumResult SolveStageGame(const StageGame& game) {
  const int labels = game.rows() + game.cols();
  for (int label = 0; label < labels; ++label) {
    try {
      EquilibriumResult res = LemkeHowson(game, label);
      if (res.deviation_gap <= kCertificationTol) return res;
    } catch (const PivotBudgetExceeded&) {
    } catch (const std::logic_error&) {
    }
  }
  if (game.zero_sum()) return ZeroSumValue(game);
  if (game.rows() <= kSupportEnumerationMaxActions &&
      game.cols() <= kSupportEnumerationMaxActions) {
    std::vector<EquilibriumResult> all = SupportEnumeration(game);
    if (!all.empty()) return all.front();
  }
  throw std::runtime_error("no certified equilibrium found for stage game");
}

}  // namespace dosgame
