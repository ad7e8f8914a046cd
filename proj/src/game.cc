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

#include "dosgame/game.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace dosgame {
namespace {

void RequireAscending(const std::vector<double>& v, const char* name) {
  if (v.empty()) {
    throw std::invalid_argument(std::string(name) + " must be nonempty");
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      throw std::invalid_argument(std::string(name) + " must be positive");
    }
    if (i > 0 && !(v[i] > v[i - 1])) {
      throw std::invalid_argument(std::string(name) +
                                  " must be strictly increasing");
    }
  }
}

void RequireState(const GameSpec& spec, const GameState& s) {
  if (s.tau < 0 || s.tau > spec.tau_max() || s.g_s < 0 ||
      s.g_s >= spec.num_gains() || s.g_a < 0 || s.g_a >= spec.num_gains()) {
    throw std::out_of_range("game state out of range");
  }
}

void RequireActions(const GameSpec& spec, int a, int b) {
  if (a < 0 || a >= spec.num_attacker_actions() || b < 0 ||
      b >= spec.num_sensor_actions()) {
    throw std::out_of_range("action index out of range");
  }
}

}  // namespace

GameSpec::GameSpec(SystemModel model, ChannelSpec channel, GameParams params)
    : model_(std::move(model)),
      channel_(std::move(channel)),
      params_(std::move(params)) {
  RequireAscending(params_.actions_attacker, "attacker actions");
  RequireAscending(params_.actions_sensor, "sensor actions");
  if (!(params_.beta > 0.0 && params_.beta < 1.0)) {
    throw std::invalid_argument("beta must lie in (0, 1)");
  }
  if (params_.tau_max < 0) throw std::invalid_argument("tau_max must be >= 0");
  if (params_.alpha_s < 0.0 || params_.alpha_a < 0.0) {
    throw std::invalid_argument("energy weights must be nonnegative");
  }
  steady_ = SteadyStateCovariance(model_, params_.tau_max);
  mu_ = StationaryDistribution(channel_).mu;

  const int L = num_gains();
  arrival_.resize(static_cast<std::size_t>(num_attacker_actions()) *
                  num_sensor_actions() * L * L);
  for (int a = 0; a < num_attacker_actions(); ++a) {
    for (int b = 0; b < num_sensor_actions(); ++b) {
      for (int gs = 0; gs < L; ++gs) {
        for (int ga = 0; ga < L; ++ga) {
          arrival_[ArrivalIndex(a, b, gs, ga)] = PacketArrivalProb(
              channel_, params_.actions_sensor[b], channel_.gain(gs),
              params_.actions_attacker[a], channel_.gain(ga));
        }
      }
    }
  }
  UpdateMinArrival();
}

int GameSpec::ArrivalIndex(int a, int b, int g_s, int g_a) const {
  const int L = num_gains();
  return ((a * num_sensor_actions() + b) * L + g_s) * L + g_a;
}

double GameSpec::Arrival(int a, int b, int g_s, int g_a) const {
  RequireActions(*this, a, b);
  if (g_s < 0 || g_s >= num_gains() || g_a < 0 || g_a >= num_gains()) {
    throw std::out_of_range("gain index out of range");
  }
  return arrival_[ArrivalIndex(a, b, g_s, g_a)];
}

void GameSpec::UpdateMinArrival() {
  min_arrival_ = *std::min_element(arrival_.begin(), arrival_.end());
}

GameSpec GameSpec::WithArrivalTable(std::vector<double> q) const {
  if (q.size() != arrival_.size()) {
    throw std::invalid_argument("arrival table has the wrong size");
  }
  for (double v : q) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("arrival probabilities must lie in [0, 1]");
    }
  }
  GameSpec copy = *this;
  copy.arrival_ = std::move(q);
  copy.UpdateMinArrival();
  return copy;
}

int StateIndex(const GameSpec& spec, const GameState& state) {
  RequireState(spec, state);
  const int L = spec.num_gains();
  return (state.tau * L + (L - 1 - state.g_s)) * L + (L - 1 - state.g_a);
}

GameState StateOf(const GameSpec& spec, int index) {
  if (index < 0 || index >= spec.num_states()) {
    throw std::out_of_range("state index out of range");
  }
  const int L = spec.num_gains();
  GameState s;
  s.g_a = L - 1 - index % L;
  s.g_s = L - 1 - (index / L) % L;
  s.tau = index / (L * L);
  return s;
}

std::vector<GameState> EnumerateStates(const GameSpec& spec) {
  std::vector<GameState> states;
  states.reserve(spec.num_states());
  for (int i = 0; i < spec.num_states(); ++i) states.push_back(StateOf(spec, i));
  return states;
}

RewardTerms RewardAttackerTerms(const GameSpec& spec, int m, int a, int b) {
  RequireActions(spec, a, b);
  return {HoldingTimeTrace(spec.steady(), m),
          spec.params().alpha_s * spec.actions_sensor()[b] -
              spec.params().alpha_a * spec.actions_attacker()[a]};
}

double RewardAttacker(const GameSpec& spec, int m, int a, int b) {
  const RewardTerms t = RewardAttackerTerms(spec, m, a, b);
  return t.trace + t.energy;
}

double RewardSensor(const GameSpec& spec, int m, int a, int b) {
  return -RewardAttacker(spec, m, a, b);
}

namespace {

// Next-gain weights for one player's current gain index.
Eigen::VectorXd NextGainWeights(const GameSpec& spec, int current) {
  if (spec.params().gain_mode == GainMode::kStationary) {
    return spec.stationary();
  }
  return spec.channel().kernel().row(current).transpose();
}

}  // namespace

std::vector<Transition> TransitionDistribution(const GameSpec& spec,
                                               const GameState& state, int a,
                                               int b) {
  RequireState(spec, state);
  const double q = spec.Arrival(a, b, state.g_s, state.g_a);
  const Eigen::VectorXd ws = NextGainWeights(spec, state.g_s);
  const Eigen::VectorXd wa = NextGainWeights(spec, state.g_a);
  const int fail_tau = std::min(state.tau + 1, spec.tau_max());
  const int L = spec.num_gains();
  std::vector<Transition> out;
  out.reserve(2 * L * L);
  for (int t = 0; t < L; ++t) {
    for (int e = 0; e < L; ++e) {
      const double w = ws(t) * wa(e);
      out.push_back({StateIndex(spec, {0, t, e}), q * w});
      out.push_back({StateIndex(spec, {fail_tau, t, e}), (1.0 - q) * w});
    }
  }
  return out;
}

SampledTransition SampleTransition(const GameSpec& spec,
                                   const GameState& state, int a, int b,
                                   Rng& rng) {
  const double q = spec.Arrival(a, b, state.g_s, state.g_a);
  SampledTransition out;
  out.received = SampleArrival(q, rng);
  GameState next;
  next.tau = out.received ? 0 : std::min(state.tau + 1, spec.tau_max());
  if (spec.params().gain_mode == GainMode::kStationary) {
    const Eigen::VectorXd& mu = spec.stationary();
    const std::span<const double> w(mu.data(), mu.size());
    next.g_s = SampleIndex(w, rng);
    next.g_a = SampleIndex(w, rng);
  } else {
    next.g_s = StepGain(spec.channel(), state.g_s, rng);
    next.g_a = StepGain(spec.channel(), state.g_a, rng);
  }
  out.next = StateIndex(spec, next);
  return out;
}

std::vector<TrajectoryStep> SimulateTrajectory(const GameSpec& spec,
                                               const Policy& policy_a,
                                               const Policy& policy_s,
                                               int horizon, int start_state,
                                               Rng& rng) {
  if (static_cast<int>(policy_a.size()) != spec.num_states() ||
      static_cast<int>(policy_s.size()) != spec.num_states()) {
    throw std::invalid_argument("policies must cover every state");
  }
  if (horizon <= 0) throw std::invalid_argument("horizon must be positive");
  std::vector<TrajectoryStep> out;
  out.reserve(horizon);
  int s = start_state;
  for (int k = 0; k < horizon; ++k) {
    const GameState state = StateOf(spec, s);
    const MixedStrategy& pa = policy_a[s];
    const MixedStrategy& ps = policy_s[s];
    if (pa.size() != spec.num_attacker_actions() ||
        ps.size() != spec.num_sensor_actions()) {
      throw std::invalid_argument("policy size does not match action set");
    }
    TrajectoryStep rec;
    rec.step = k;
    rec.state = s;
    rec.tau = state.tau;
    rec.g_s = spec.channel().gain(state.g_s);
    rec.g_a = spec.channel().gain(state.g_a);
    rec.a_index = SampleIndex({pa.probs.data(), std::size_t(pa.size())}, rng);
    rec.b_index = SampleIndex({ps.probs.data(), std::size_t(ps.size())}, rng);
    rec.a = spec.actions_attacker()[rec.a_index];
    rec.b = spec.actions_sensor()[rec.b_index];
    rec.q = spec.Arrival(rec.a_index, rec.b_index, state.g_s, state.g_a);
    rec.trace_p = HoldingTimeTrace(spec.steady(), state.tau);
    rec.r1 = RewardAttacker(spec, state.tau, rec.a_index, rec.b_index);
    const SampledTransition tr =
        SampleTransition(spec, state, rec.a_index, rec.b_index, rng);
    rec.gamma = tr.received;
    out.push_back(rec);
    s = tr.next;
  }
  return out;
}

double DiscountedReturn(const std::vector<TrajectoryStep>& trajectory,
                        double beta) {
  double total = 0.0;
  double discount = 1.0;
  for (const TrajectoryStep& step : trajectory) {
    total += discount * step.r1;
    discount *= beta;
  }
  return total;
}

}  // namespace dosgame
