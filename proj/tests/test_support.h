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

// Shared fixtures for the unit and acceptance tests.

#ifndef DOSGAME_TESTS_TEST_SUPPORT_H_
#define DOSGAME_TESTS_TEST_SUPPORT_H_

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "dosgame/channel.h"
#include "dosgame/estimation.h"
#include "dosgame/game.h"

namespace dosgame::testing {

// Positive root of 0.7056 P^2 + 0.04 P - 0.64, the scalar fixed point for
// A = 1.2, C = 0.7, Q = R = 0.8 solved by hand.
inline double ScalarPBar() {
  const double a = 0.7056, b = 0.04, c = -0.64;
  return (-b + std::sqrt(b * b - 4 * a * c)) / (2 * a);
}

inline SystemModel ScalarModel() {
  return SystemModel::Scalar(1.2, 0.7, 0.8, 0.8);
}

inline Eigen::MatrixXd HalfKernel() {
  Eigen::MatrixXd k(2, 2);
  k << 0.5, 0.5, 0.5, 0.5;
  return k;
}

// Two gains, two actions each, twenty states.
inline GameSpec DefaultSpec(double alpha_s = 1.0, double alpha_a = 0.1,
                            double beta = 0.75, double alpha = 1.0) {
  GameParams p;
  p.actions_attacker = {1, 6};
  p.actions_sensor = {2, 5};
  p.alpha_s = alpha_s;
  p.alpha_a = alpha_a;
  p.beta = beta;
  p.tau_max = 4;
  return GameSpec(ScalarModel(), ChannelSpec({0.6, 0.8}, HalfKernel(), 0.5,
                                             alpha),
                  p);
}

// Action sets {3, 9} and {2, 7}, tuned so that the sufficient condition for
// strictly supermodular Q-values holds.
inline GameSpec MonotoneSpec() {
  GameParams p;
  p.actions_attacker = {3, 9};
  p.actions_sensor = {2, 7};
  p.alpha_s = 0.14;
  p.alpha_a = 0.09;
  p.beta = 0.8;
  p.tau_max = 3;
  return GameSpec(ScalarModel(),
                  ChannelSpec({0.6, 0.8}, HalfKernel(), 0.5, 2.75), p);
}

// Value of a 2x2 zero-sum game for the row maximizer, from the saddle point
// or the equalizing mix.
inline double TwoByTwoValue(const Eigen::Matrix2d& m) {
  const double lower = std::max(m.row(0).minCoeff(), m.row(1).minCoeff());
  const double upper = std::min(m.col(0).maxCoeff(), m.col(1).maxCoeff());
  if (std::abs(lower - upper) < 1e-12) return lower;
  const double den = m(0, 0) + m(1, 1) - m(0, 1) - m(1, 0);
  return (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) / den;
}

}  // namespace dosgame::testing

#endif  // DOSGAME_TESTS_TEST_SUPPORT_H_
