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

#include "dosgame/bayesian.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dosgame {
namespace {

int IntPow(int base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > kMaxTypeContingentStrategies) {
      throw std::length_error("too many type-contingent strategies");
    }
  }
  return static_cast<int>(r);
}

void RequireTypeStrategy(const TypeStrategy& s, int types, int actions) {
  if (static_cast<int>(s.per_type.size()) != types) {
    throw std::invalid_argument("one mix per type expected");
  }
  for (const MixedStrategy& m : s.per_type) {
    if (m.size() != actions || !m.IsValid()) {
      throw std::invalid_argument("invalid per-type mix");
    }
  }
}

}  // namespace

BayesianSpec::BayesianSpec(Eigen::MatrixXd belief,
                           std::vector<std::vector<Eigen::MatrixXd>> payoff)
    : belief_(std::move(belief)), payoff_(std::move(payoff)) {
  if (belief_.size() == 0) throw std::invalid_argument("empty belief");
  if ((belief_.array() < 0.0).any() || !belief_.allFinite()) {
    throw std::invalid_argument("belief entries must be nonnegative");
  }
  if (std::abs(belief_.sum() - 1.0) > kNormalizationTol) {
    throw std::invalid_argument("belief must sum to 1");
  }
  if ((belief_.rowwise().sum().array() <= 0.0).any() ||
      (belief_.colwise().sum().array() <= 0.0).any()) {
    throw std::invalid_argument("belief marginals must be positive");
  }
  if (static_cast<int>(payoff_.size()) != belief_.rows()) {
    throw std::invalid_argument("payoff rows must match sensor types");
  }
  for (const auto& row : payoff_) {
    if (static_cast<int>(row.size()) != belief_.cols()) {
      throw std::invalid_argument("payoff columns must match attacker types");
    }
    for (const Eigen::MatrixXd& m : row) {
      if (m.rows() != payoff_[0][0].rows() || m.cols() != payoff_[0][0].cols() ||
          m.size() == 0 || !m.allFinite()) {
        throw std::invalid_argument("payoff matrices must share a shape");
      }
    }
  }
}

int BayesianSpec::num_attacker_actions() const {
  return static_cast<int>(payoff_[0][0].rows());
}

int BayesianSpec::num_sensor_actions() const {
  return static_cast<int>(payoff_[0][0].cols());
}

BayesianSpec MakeBayesianSpec(const GameSpec& game, int m, BeliefMode belief,
                              BayesPayoff payoff,
                              const std::vector<double>& v_tau) {
  if (m < 0 || m > game.tau_max()) {
    throw std::out_of_range("holding time out of range");
  }
  const int L = game.num_gains();
  const Eigen::VectorXd& mu = game.stationary();
  Eigen::MatrixXd joint(L, L);
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      joint(i, j) = belief == BeliefMode::kStationary
                        ? mu(i) * mu(j)
                        : mu(i) * game.channel().kernel()(i, j);
    }
  }
  joint /= joint.sum();

  const int next = std::min(m + 1, game.tau_max());
  double good = 0.0, bad = 0.0;
  if (payoff == BayesPayoff::kExpectedNext) {
    good = HoldingTimeTrace(game.steady(), 0);
    bad = HoldingTimeTrace(game.steady(), next);
  } else if (payoff == BayesPayoff::kLookahead) {
    if (static_cast<int>(v_tau.size()) != game.tau_max() + 1) {
      throw std::invalid_argument("lookahead needs one value per holding time");
    }
    good = v_tau[0];
    bad = v_tau[next];
  }

  const int nA = game.num_attacker_actions();
  const int nB = game.num_sensor_actions();
  std::vector<std::vector<Eigen::MatrixXd>> tables(
      L, std::vector<Eigen::MatrixXd>(L, Eigen::MatrixXd(nA, nB)));
  for (int gs = 0; gs < L; ++gs) {
    for (int ga = 0; ga < L; ++ga) {
      for (int a = 0; a < nA; ++a) {
        for (int b = 0; b < nB; ++b) {
          double r = RewardAttacker(game, m, a, b);
          if (payoff != BayesPayoff::kImmediate) {
            const double q = game.Arrival(a, b, gs, ga);
            r += game.beta() * (q * good + (1.0 - q) * bad);
          }
          tables[gs][ga](a, b) = r;
        }
      }
    }
  }
  return BayesianSpec(std::move(joint), std::move(tables));
}

int MapAction(int map_index, int type, int num_actions) {
  for (int t = 0; t < type; ++t) map_index /= num_actions;
  return map_index % num_actions;
}

Eigen::MatrixXd ExpandMatrix(const BayesianSpec& spec) {
  const int nA = spec.num_attacker_actions();
  const int nB = spec.num_sensor_actions();
  const int Ta = spec.num_attacker_types();
  const int Ts = spec.num_sensor_types();
  const int rows = IntPow(nA, Ta);
  const int cols = IntPow(nB, Ts);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double v = 0.0;
      for (int i = 0; i < Ts; ++i) {
        for (int j = 0; j < Ta; ++j) {
          v += spec.belief()(i, j) *
               spec.payoff(i, j)(MapAction(r, j, nA), MapAction(c, i, nB));
        }
      }
      out(r, c) = v;
    }
  }
  return out;
}

namespace {

TypeStrategy Marginalize(const Eigen::VectorXd& mix, int types, int actions) {
  TypeStrategy s;
  for (int t = 0; t < types; ++t) {
    MixedStrategy m{Eigen::VectorXd::Zero(actions)};
    for (int k = 0; k < mix.size(); ++k) {
      m.probs(MapAction(k, t, actions)) += mix(k);
    }
    m.probs /= m.probs.sum();
    if (!m.IsValid()) throw std::runtime_error("marginal is not a distribution");
    s.per_type.push_back(std::move(m));
  }
  return s;
}

}  // namespace

BayesianSolution SolveBayesian(const BayesianSpec& spec) {
  BayesianSolution out;
  out.expanded = ZeroSumValue(StageGame::ZeroSum(ExpandMatrix(spec)));
  out.attacker = Marginalize(out.expanded.strat_p1.probs,
                             spec.num_attacker_types(),
                             spec.num_attacker_actions());
  out.sensor = Marginalize(out.expanded.strat_p2.probs,
                           spec.num_sensor_types(), spec.num_sensor_actions());
  out.value = out.expanded.value_p1;
  out.deviation_gap = BayesDeviationGap(spec, out.attacker, out.sensor);
  return out;
}

double BayesExpectedPayoff(const BayesianSpec& spec, const TypeStrategy& s1,
                           const TypeStrategy& s2) {
  RequireTypeStrategy(s1, spec.num_attacker_types(),
                      spec.num_attacker_actions());
  RequireTypeStrategy(s2, spec.num_sensor_types(), spec.num_sensor_actions());
  double v = 0.0;
  for (int i = 0; i < spec.num_sensor_types(); ++i) {
    for (int j = 0; j < spec.num_attacker_types(); ++j) {
      v += spec.belief()(i, j) * s1.per_type[j].probs.dot(
                                     spec.payoff(i, j) * s2.per_type[i].probs);
    }
  }
  return v;
}

double BayesDeviationGap(const BayesianSpec& spec, const TypeStrategy& s1,
                         const TypeStrategy& s2) {
  RequireTypeStrategy(s1, spec.num_attacker_types(),
                      spec.num_attacker_actions());
  RequireTypeStrategy(s2, spec.num_sensor_types(), spec.num_sensor_actions());
  const Eigen::MatrixXd& belief = spec.belief();
  double gap = 0.0;

  // Attacker type j against the sensor's mixes, weighted by Pr(i | j).
  for (int j = 0; j < spec.num_attacker_types(); ++j) {
    const double pj = belief.col(j).sum();
    Eigen::VectorXd u = Eigen::VectorXd::Zero(spec.num_attacker_actions());
    for (int i = 0; i < spec.num_sensor_types(); ++i) {
      u += belief(i, j) / pj * (spec.payoff(i, j) * s2.per_type[i].probs);
    }
    gap = std::max(gap, u.maxCoeff() - s1.per_type[j].probs.dot(u));
  }
  // Sensor type i maximizes -r1, weighted by Pr(j | i).
  for (int i = 0; i < spec.num_sensor_types(); ++i) {
    const double pi = belief.row(i).sum();
    Eigen::VectorXd u = Eigen::VectorXd::Zero(spec.num_sensor_actions());
    for (int j = 0; j < spec.num_attacker_types(); ++j) {
      u -= belief(i, j) / pi *
           (spec.payoff(i, j).transpose() * s1.per_type[j].probs);
    }
    gap = std::max(gap, u.maxCoeff() - s2.per_type[i].probs.dot(u));
  }
  return gap;
}

}  // namespace dosgame
