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

#include "dosgame/channel.h"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "test_support.h"

namespace dosgame {
namespace {

using testing::HalfKernel;

// 1 - 2 Q(sqrt(alpha SINR)) with Q the Gaussian upper tail.
double ArrivalOracle(double alpha, double sinr) {
  return 1.0 - std::erfc(std::sqrt(alpha * sinr) / std::sqrt(2.0));
}

TEST(StationaryTest, SymmetricKernelIsUniform) {
  const ChannelSpec ch({0.6, 0.8}, HalfKernel(), 0.5);
  const StationaryDist d = StationaryDistribution(ch);
  ASSERT_EQ(d.mu.size(), 2);
  EXPECT_DOUBLE_EQ(d.mu(0), 0.5);
  EXPECT_DOUBLE_EQ(d.mu(1), 0.5);
}

TEST(StationaryTest, TwoStateClosedForm) {
  Eigen::MatrixXd k(2, 2);
  k << 0.7, 0.3, 0.4, 0.6;
  const StationaryDist d = StationaryDistribution(ChannelSpec({1, 2}, k, 1));
  EXPECT_NEAR(d.mu(0), 0.4 / 0.7, 1e-12);
  EXPECT_NEAR(d.mu(1), 0.3 / 0.7, 1e-12);
  const Eigen::RowVectorXd back = d.mu.transpose() * k;
  EXPECT_LT((back.transpose() - d.mu).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ErgodicityTest, AcceptsMixingRejectsReducibleAndPeriodic) {
  EXPECT_TRUE(IsIrreducible(HalfKernel()));
  EXPECT_EQ(Period(HalfKernel()), 1);
  Eigen::MatrixXd blocks(4, 4);
  blocks << 0.5, 0.5, 0, 0, 0.5, 0.5, 0, 0, 0, 0, 0.5, 0.5, 0, 0, 0.5, 0.5;
  EXPECT_FALSE(IsIrreducible(blocks));
  EXPECT_THROW(ChannelSpec({1, 2, 3, 4}, blocks, 1.0), std::invalid_argument);
  Eigen::MatrixXd flip(2, 2);
  flip << 0, 1, 1, 0;
  EXPECT_TRUE(IsIrreducible(flip));
  EXPECT_EQ(Period(flip), 2);
  EXPECT_THROW(ChannelSpec({1, 2}, flip, 1.0), std::invalid_argument);
}

TEST(ChannelSpecTest, RejectsBadInputs) {
  EXPECT_THROW(ChannelSpec({0.8, 0.6}, HalfKernel(), 0.5),
               std::invalid_argument);
  EXPECT_THROW(ChannelSpec({0.6, 0.8}, HalfKernel(), 0.0),
               std::invalid_argument);
  EXPECT_THROW(ChannelSpec({0.6, 0.8}, HalfKernel(), 0.5, -1.0),
               std::invalid_argument);
  Eigen::MatrixXd bad(2, 2);
  bad << 0.5, 0.6, 0.5, 0.5;
  EXPECT_THROW(ChannelSpec({0.6, 0.8}, bad, 0.5), std::invalid_argument);
  const ChannelSpec ch({0.6, 0.8}, HalfKernel(), 0.5);
  EXPECT_EQ(ch.IndexOf(0.8), 1);
  EXPECT_THROW(ch.IndexOf(0.7), std::invalid_argument);
}

TEST(ArrivalTest, MatchesErfcOracle) {
  const ChannelSpec ch({0.6, 0.8}, HalfKernel(), 0.5, 1.0);
  for (double ps : {2.0, 5.0}) {
    for (double pa : {1.0, 6.0}) {
      for (double gs : {0.6, 0.8}) {
        for (double ga : {0.6, 0.8}) {
          const double sinr = ps * gs / (pa * ga + 0.5);
          EXPECT_DOUBLE_EQ(Sinr(ps, gs, pa, ga, 0.5), sinr);
          EXPECT_NEAR(PacketArrivalProb(ch, ps, gs, pa, ga),
                      ArrivalOracle(1.0, sinr), 1e-14);
        }
      }
    }
  }
}

TEST(ArrivalTest, MonotoneInPowers) {
  const ChannelSpec ch({0.6, 0.8}, HalfKernel(), 0.5, 2.0);
  EXPECT_LT(PacketArrivalProb(ch, 2, 0.8, 1, 0.6),
            PacketArrivalProb(ch, 5, 0.8, 1, 0.6));
  EXPECT_GT(PacketArrivalProb(ch, 2, 0.8, 1, 0.6),
            PacketArrivalProb(ch, 2, 0.8, 6, 0.6));
  EXPECT_NEAR(NormalUpperTail(0.0), 0.5, 1e-15);
  EXPECT_NEAR(NormalUpperTail(1.959963984540054), 0.025, 1e-12);
}

TEST(SamplingTest, ArrivalFrequencyAndGainSteps) {
  Rng rng(11);
  const double q = 0.37;
  int hits = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) hits += SampleArrival(q, rng);
  EXPECT_NEAR(hits / static_cast<double>(n), q, 0.005);
  EXPECT_THROW(SampleArrival(1.5, rng), std::invalid_argument);

  Eigen::MatrixXd k(2, 2);
  k << 0.9, 0.1, 0.2, 0.8;
  const ChannelSpec ch({1, 2}, k, 1);
  int stay = 0;
  for (int i = 0; i < n; ++i) stay += StepGain(ch, 0, rng) == 0;
  EXPECT_NEAR(stay / static_cast<double>(n), 0.9, 0.005);
}

}  // namespace
}  // namespace dosgame
