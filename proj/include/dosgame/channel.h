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

#ifndef DOSGAME_CHANNEL_H_
#define DOSGAME_CHANNEL_H_

#include <vector>

#include <Eigen/Dense>

#include "dosgame/random.h"

namespace dosgame {

// Finite-state Markov fading channel shared by the sensor and the jammer.
//
// Gains are stored in ascending order and addressed by index everywhere else
// in the library. The kernel is row-stochastic, kernel(i, j) = Pr(j | i), and
// must be irreducible and aperiodic.
class ChannelSpec {
 public:
  ChannelSpec(std::vector<double> gains, Eigen::MatrixXd kernel, double sigma2,
              double alpha = 1.0);

  const std::vector<double>& gains() const { return gains_; }
  const Eigen::MatrixXd& kernel() const { return kernel_; }
  double sigma2() const { return sigma2_; }
  double alpha() const { return alpha_; }
  int size() const { return static_cast<int>(gains_.size()); }
  double gain(int index) const { return gains_.at(index); }

  // Index of `value` in the gain set; throws std::invalid_argument when the
  // value is not a member (exact match within 1e-12).
  int IndexOf(double value) const;

 private:
  std::vector<double> gains_;
  Eigen::MatrixXd kernel_;
  double sigma2_;
  double alpha_;
};

// True when the positive-entry graph of `kernel` is strongly connected.
bool IsIrreducible(const Eigen::MatrixXd& kernel);

// Period of an irreducible kernel (gcd of cycle lengths); 1 means aperiodic.
int Period(const Eigen::MatrixXd& kernel);

struct StationaryDist {
  Eigen::VectorXd mu;
};

StationaryDist StationaryDistribution(const ChannelSpec& spec);

// (p_s g_s) / (p_a g_a + sigma2).
double Sinr(double p_s, double g_s, double p_a, double g_a, double sigma2);

// Standard normal upper tail 1 - Phi(x), via erfc.
double NormalUpperTail(double x);

// Packet arrival probability q = 1 - SER with SER = 2 Qfn(sqrt(alpha SINR)),
// clamped to [0, 1].
double PacketArrivalProb(const ChannelSpec& spec, double p_s, double g_s,
                         double p_a, double g_a);

// Next gain index drawn from the kernel row of `current`.
int StepGain(const ChannelSpec& spec, int current, Rng& rng);

// Bernoulli(q); true means the packet was received.
bool SampleArrival(double q, Rng& rng);

}  // namespace dosgame

#endif  // DOSGAME_CHANNEL_H_
