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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/LU>

namespace dosgame {
namespace {

constexpr double kRowSumTol = 1e-12;

// Vertices reachable from `start` following positive entries of `kernel`
// (or of its transpose).
std::vector<bool> Reachable(const Eigen::MatrixXd& kernel, int start,
                            bool transpose) {
  const int n = static_cast<int>(kernel.rows());
  std::vector<bool> seen(n, false);
  std::vector<int> stack = {start};
  seen[start] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v) {
      const double w = transpose ? kernel(v, u) : kernel(u, v);
      if (w > 0.0 && !seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

bool IsIrreducible(const Eigen::MatrixXd& kernel) {
  if (kernel.rows() == 0) return false;
  auto all = [](const std::vector<bool>& v) {
    return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
  };
  return all(Reachable(kernel, 0, false)) && all(Reachable(kernel, 0, true));
}

int Period(const Eigen::MatrixXd& kernel) {
  // BFS levels from vertex 0; the period is the gcd of
  // level(u) + 1 - level(v) over all edges u -> v.
  const int n = static_cast<int>(kernel.rows());
  std::vector<int> level(n, -1);
  std::vector<int> queue = {0};
  level[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (int v = 0; v < n; ++v) {
      if (kernel(u, v) > 0.0 && level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
    }
  }
  int g = 0;
  for (int u = 0; u < n; ++u) {
    if (level[u] < 0) continue;
    for (int v = 0; v < n; ++v) {
      if (kernel(u, v) > 0.0 && level[v] >= 0) {
        g = std::gcd(g, std::abs(level[u] + 1 - level[v]));
      }
    }
  }
  return g;
}

ChannelSpec::ChannelSpec(std::vector<double> gains, Eigen::MatrixXd kernel,
                         double sigma2, double alpha)
    : gains_(std::move(gains)),
      kernel_(std::move(kernel)),
      sigma2_(sigma2),
      alpha_(alpha) {
  const int n = static_cast<int>(gains_.size());
  if (n == 0) throw std::invalid_argument("gain set is empty");
  for (int i = 0; i < n; ++i) {
    if (!(gains_[i] > 0.0)) {
      throw std::invalid_argument("gains must be positive");
    }
    if (i > 0 && !(gains_[i] > gains_[i - 1])) {
      throw std::invalid_argument("gains must be strictly increasing");
    }
  }
  if (kernel_.rows() != n || kernel_.cols() != n) {
    throw std::invalid_argument("kernel must be " + std::to_string(n) + "x" +
                                std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    if ((kernel_.row(i).array() < 0.0).any()) {
      throw std::invalid_argument("kernel entries must be nonnegative");
    }
    if (std::abs(kernel_.row(i).sum() - 1.0) > kRowSumTol) {
      throw std::invalid_argument("kernel row " + std::to_string(i) +
                                  " does not sum to 1");
    }
  }
  if (!IsIrreducible(kernel_)) {
    throw std::invalid_argument("kernel is not irreducible");
  }
  if (Period(kernel_) != 1) {
    throw std::invalid_argument("kernel is periodic");
  }
  if (!(sigma2_ > 0.0)) throw std::invalid_argument("sigma2 must be positive");
  if (!(alpha_ > 0.0)) throw std::invalid_argument("alpha must be positive");
}

int ChannelSpec::IndexOf(double value) const {
  for (int i = 0; i < size(); ++i) {
    if (std::abs(gains_[i] - value) <= 1e-12) return i;
  }
  throw std::invalid_argument("gain " + std::to_string(value) +
                              " is not in the channel gain set");
}

StationaryDist StationaryDistribution(const ChannelSpec& spec) {
  const int n = spec.size();
  // mu (K - I) = 0 with the last balance equation replaced by sum(mu) = 1.
  Eigen::MatrixXd M = spec.kernel().transpose() -
                      Eigen::MatrixXd::Identity(n, n);
  M.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  Eigen::VectorXd mu = M.fullPivLu().solve(rhs);
  if ((mu.array() <= 0.0).any()) {
    throw std::runtime_error("stationary distribution is not strictly positive");
  }
  mu /= mu.sum();
  return {mu};
}

double Sinr(double p_s, double g_s, double p_a, double g_a, double sigma2) {
  return (p_s * g_s) / (p_a * g_a + sigma2);
}

double NormalUpperTail(double x) {
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double PacketArrivalProb(const ChannelSpec& spec, double p_s, double g_s,
                         double p_a, double g_a) {
  const double sinr = Sinr(p_s, g_s, p_a, g_a, spec.sigma2());
  const double ser = 2.0 * NormalUpperTail(std::sqrt(spec.alpha() * sinr));
  return std::clamp(1.0 - ser, 0.0, 1.0);
}

int StepGain(const ChannelSpec& spec, int current, Rng& rng) {
  if (current < 0 || current >= spec.size()) {
    throw std::out_of_range("gain index out of range");
  }
  const Eigen::VectorXd row = spec.kernel().row(current).transpose();
  return SampleIndex(std::span<const double>(row.data(), row.size()), rng);
}

bool SampleArrival(double q, Rng& rng) {
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("q must lie in [0, 1]");
  return Uniform01(rng) < q;
}

}  // namespace dosgame
