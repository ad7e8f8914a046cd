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

#include "dosgame/nashq.h"

#include <algorithm>
#include <cmath>
#include <optional>

namespace dosgame {

QTable::QTable(int num_states, int num_attacker_actions, int num_sensor_actions)
    : num_states_(num_states),
      num_a_(num_attacker_actions),
      num_b_(num_sensor_actions) {
  if (num_states <= 0 || num_attacker_actions <= 0 || num_sensor_actions <= 0) {
    throw std::invalid_argument("QTable dimensions must be positive");
  }
  q1_.assign(num_cells(), 0.0);
  q2_.assign(num_cells(), 0.0);
  visits_.assign(num_cells(), 0);
}

double& QTable::at(int player, int s, int a, int b) {
  return values(player).at(Cell(s, a, b));
}

double QTable::at(int player, int s, int a, int b) const {
  return values(player).at(Cell(s, a, b));
}

StageGame QTable::StageGameAt(int s) const {
  Eigen::MatrixXd u1(num_a_, num_b_), u2(num_a_, num_b_);
  for (int a = 0; a < num_a_; ++a) {
    for (int b = 0; b < num_b_; ++b) {
      u1(a, b) = q1_[Cell(s, a, b)];
      u2(a, b) = q2_[Cell(s, a, b)];
    }
  }
  return StageGame(std::move(u1), std::move(u2));
}

double QTable::MirrorError() const {
  double err = 0.0;
  for (int c = 0; c < num_cells(); ++c) {
    err = std::max(err, std::abs(q1_[c] + q2_[c]));
  }
  return err;
}

double SupNormDistance(const std::vector<double>& x,
                       const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max(d, std::abs(x[i] - y[i]));
  }
  return d;
}

double SupNorm(const std::vector<double>& x) {
  double d = 0.0;
  for (double v : x) d = std::max(d, std::abs(v));
  return d;
}

EquilibriumResult SolveStage(const StageGame& game, StageSolver solver) {
  if (solver == StageSolver::kZeroSum && game.zero_sum()) {
    return ZeroSumValue(game);
  }
  return SolveStageGame(game);
}

void LearnConfig::Validate() const {
  if (episodes < 0) throw std::invalid_argument("episodes must be >= 0");
  if (steps_per_episode <= 0) {
    throw std::invalid_argument("steps_per_episode must be positive");
  }
  if (!(lr_numerator > 0.0) || !(lr_offset > 0.0)) {
    throw std::invalid_argument("learning-rate constants must be positive");
  }
  if (LearningRate(1) > 1.0) {
    throw std::invalid_argument("learning rate exceeds 1 on the first visit");
  }
  if (!(exploration >= 0.0 && exploration <= 1.0)) {
    throw std::invalid_argument("exploration must lie in [0, 1]");
  }
  if (curve_every < 0) throw std::invalid_argument("curve_every must be >= 0");
}

namespace {

// Bilinear value s1' U s2 of both players' tables at state s.
std::pair<double, double> EquilibriumValues(const QTable& q, int s,
                                            const EquilibriumResult& eq) {
  double v1 = 0.0, v2 = 0.0;
  for (int a = 0; a < q.num_attacker_actions(); ++a) {
    double row1 = 0.0, row2 = 0.0;
    for (int b = 0; b < q.num_sensor_actions(); ++b) {
      row1 += q.at(1, s, a, b) * eq.strat_p2.probs(b);
      row2 += q.at(2, s, a, b) * eq.strat_p2.probs(b);
    }
    v1 += eq.strat_p1.probs(a) * row1;
    v2 += eq.strat_p1.probs(a) * row2;
  }
  return {v1, v2};
}

// Per-state equilibrium cache invalidated whenever a cell of the state moves.
class EquilibriumCache {
 public:
  EquilibriumCache(const QTable& q, StageSolver solver)
      : q_(q), solver_(solver), cache_(q.num_states()) {}

  const EquilibriumResult& Get(int s) {
    if (!cache_[s]) {
      try {
        cache_[s] = SolveStage(q_.StageGameAt(s), solver_);
      } catch (const std::exception& e) {
        throw StageSolveError(s, e.what());
      }
    }
    return *cache_[s];
  }
  void Invalidate(int s) { cache_[s].reset(); }

 private:
  const QTable& q_;
  StageSolver solver_;
  std::vector<std::optional<EquilibriumResult>> cache_;
};

int SampleMixed(const Eigen::VectorXd& eq_probs, double exploration,
                Rng& rng) {
  const int n = static_cast<int>(eq_probs.size());
  Eigen::VectorXd p = (1.0 - exploration) * eq_probs;
  p.array() += exploration / n;
  return SampleIndex({p.data(), static_cast<std::size_t>(n)}, rng);
}

}  // namespace

LearnResult NashQLearn(const GameSpec& spec, const LearnConfig& cfg) {
  cfg.Validate();
  const int N = spec.num_states();
  const int nA = spec.num_attacker_actions();
  const int nB = spec.num_sensor_actions();
  LearnResult out;
  out.q = QTable(N, nA, nB);
  QTable& q = out.q;
  EquilibriumCache cache(q, cfg.solver);
  Rng rng(cfg.seed);
  std::size_t next_checkpoint = 0;
  std::vector<std::int64_t> checkpoints = cfg.checkpoints;
  std::sort(checkpoints.begin(), checkpoints.end());

  auto record_curve = [&](std::int64_t episode) {
    CurvePoint p;
    p.episode = episode;
    p.step = out.steps;
    for (int a = 0; a < nA; ++a) {
      for (int b = 0; b < nB; ++b) p.q1_s0.push_back(q.at(1, 0, a, b));
    }
    out.curve.push_back(std::move(p));
  };
  if (cfg.curve_every > 0) record_curve(0);

  for (std::int64_t episode = 1; episode <= cfg.episodes; ++episode) {
    int s = std::min(static_cast<int>(Uniform01(rng) * N), N - 1);
    for (int step = 0; step < cfg.steps_per_episode; ++step) {
      const GameState state = StateOf(spec, s);
      const EquilibriumResult& here = cache.Get(s);
      const int a = SampleMixed(here.strat_p1.probs, cfg.exploration, rng);
      const int b = SampleMixed(here.strat_p2.probs, cfg.exploration, rng);
      const double r1 = RewardAttacker(spec, state.tau, a, b);
      const double r2 = -r1;
      const SampledTransition tr = SampleTransition(spec, state, a, b, rng);

      const auto [nash1, nash2] =
          EquilibriumValues(q, tr.next, cache.Get(tr.next));
      const int cell = q.Cell(s, a, b);
      const std::int64_t count = ++q.visits()[cell];
      const double lr = cfg.LearningRate(count);
      double& q1 = q.values(1)[cell];
      double& q2 = q.values(2)[cell];
      q1 = (1.0 - lr) * q1 + lr * (r1 + spec.beta() * nash1);
      q2 = (1.0 - lr) * q2 + lr * (r2 + spec.beta() * nash2);
      out.max_mirror_error = std::max(out.max_mirror_error, std::abs(q1 + q2));
      cache.Invalidate(s);
      ++out.steps;
      s = tr.next;
    }
    if (cfg.curve_every > 0 && episode % cfg.curve_every == 0) {
      record_curve(episode);
    }
    while (next_checkpoint < checkpoints.size() &&
           checkpoints[next_checkpoint] == episode) {
      out.checkpoints.emplace_back(episode, q.values(1));
      ++next_checkpoint;
    }
  }
  out.policies = ExtractPolicy(q, cfg.solver);
  return out;
}

OracleResult ShapleyValueIteration(const GameSpec& spec, double tol,
                                   int max_sweeps) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const int N = spec.num_states();
  const int nA = spec.num_attacker_actions();
  const int nB = spec.num_sensor_actions();
  OracleResult out;
  out.q = QTable(N, nA, nB);
  QTable& q = out.q;

  std::vector<std::vector<Transition>> trans(q.num_cells());
  std::vector<double> reward(q.num_cells());
  for (int s = 0; s < N; ++s) {
    const GameState state = StateOf(spec, s);
    for (int a = 0; a < nA; ++a) {
      for (int b = 0; b < nB; ++b) {
        trans[q.Cell(s, a, b)] = TransitionDistribution(spec, state, a, b);
        reward[q.Cell(s, a, b)] = RewardAttacker(spec, state.tau, a, b);
      }
    }
  }

  std::vector<double> value(N);
  std::vector<double> next(q.num_cells());
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (int s = 0; s < N; ++s) {
      value[s] = ZeroSumValue(q.StageGameAt(s)).value_p1;
    }
    for (int c = 0; c < q.num_cells(); ++c) {
      double expect = 0.0;
      for (const Transition& t : trans[c]) expect += t.prob * value[t.next];
      next[c] = reward[c] + spec.beta() * expect;
    }
    const double delta = SupNormDistance(next, q.values(1));
    q.values(1) = next;
    for (int c = 0; c < q.num_cells(); ++c) q.values(2)[c] = -next[c];
    out.sweep_deltas.push_back(delta);
    if (delta <= tol) {
      out.policies = ExtractPolicy(q);
      return out;
    }
  }
  throw std::runtime_error("value iteration did not reach tolerance");
}

std::vector<EquilibriumResult> ExtractPolicy(const QTable& q,
                                             StageSolver solver) {
  std::vector<EquilibriumResult> out;
  out.reserve(q.num_states());
  for (int s = 0; s < q.num_states(); ++s) {
    try {
      out.push_back(SolveStage(q.StageGameAt(s), solver));
    } catch (const std::exception& e) {
      throw StageSolveError(s, e.what());
    }
  }
  return out;
}

std::pair<Policy, Policy> PoliciesOf(
    const std::vector<EquilibriumResult>& equilibria) {
  Policy pa, ps;
  for (const EquilibriumResult& eq : equilibria) {
    pa.push_back(eq.strat_p1);
    ps.push_back(eq.strat_p2);
  }
  return {pa, ps};
}

int DiscountHorizon(double beta, double eps) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("beta must lie in (0, 1)");
  }
  return static_cast<int>(std::ceil(std::log(eps) / std::log(beta)));
}

ReturnEstimate EmpiricalReturn(const GameSpec& spec, const Policy& policy_a,
                               const Policy& policy_s, int start_state,
                               int horizon, int n_rollouts, Rng& rng) {
  if (std::pow(spec.beta(), horizon) > 1e-6 * (1.0 + 1e-12)) {
    throw std::invalid_argument("horizon too short for the discount");
  }
  if (n_rollouts < 2) throw std::invalid_argument("need at least 2 rollouts");
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n_rollouts; ++i) {
    const double g = DiscountedReturn(
        SimulateTrajectory(spec, policy_a, policy_s, horizon, start_state, rng),
        spec.beta());
    sum += g;
    sum_sq += g * g;
  }
  ReturnEstimate est;
  est.mean = sum / n_rollouts;
  const double var =
      std::max(0.0, (sum_sq - n_rollouts * est.mean * est.mean) /
                        (n_rollouts - 1));
  est.std_error = std::sqrt(var / n_rollouts);
  return est;
}

}  // namespace dosgame
