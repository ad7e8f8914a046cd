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

#ifndef DOSGAME_GAME_H_
#define DOSGAME_GAME_H_

#include <vector>

#include "dosgame/channel.h"
#include "dosgame/equilibria.h"
#include "dosgame/estimation.h"
#include "dosgame/random.h"

namespace dosgame {

// How the gains of the next state are drawn. kStationary draws both from the
// stationary distribution independently of the current gains; kMarkov steps
// each gain through the channel kernel.
enum class GainMode { kStationary, kMarkov };

struct GameParams {
  std::vector<double> actions_attacker;  // jamming powers, ascending
  std::vector<double> actions_sensor;    // transmission powers, ascending
  double alpha_s = 1.0;                  // weight on the sensor's energy
  double alpha_a = 1.0;                  // weight on the attacker's energy
  double beta = 0.75;                    // discount
  int tau_max = 4;                       // holding-time cap
  GainMode gain_mode = GainMode::kStationary;
};

// Holding time and gain indices (into ChannelSpec::gains()).
struct GameState {
  int tau = 0;
  int g_s = 0;
  int g_a = 0;

  bool operator==(const GameState&) const = default;
};

// The attacker-sensor stochastic game. The attacker is player 1 (row player
// of every stage game) and maximizes r1; the sensor is player 2 with r2 =
// -r1.
//
// States are indexed holding-time major, then sensor gain descending, then
// attacker gain descending, so index 0 is (0, max gain, max gain).
class GameSpec {
 public:
  GameSpec(SystemModel model, ChannelSpec channel, GameParams params);

  const SystemModel& model() const { return model_; }
  const ChannelSpec& channel() const { return channel_; }
  const GameParams& params() const { return params_; }
  const SteadySummary& steady() const { return steady_; }
  const Eigen::VectorXd& stationary() const { return mu_; }

  const std::vector<double>& actions_attacker() const {
    return params_.actions_attacker;
  }
  const std::vector<double>& actions_sensor() const {
    return params_.actions_sensor;
  }
  int num_attacker_actions() const {
    return static_cast<int>(params_.actions_attacker.size());
  }
  int num_sensor_actions() const {
    return static_cast<int>(params_.actions_sensor.size());
  }
  int num_gains() const { return channel_.size(); }
  int num_states() const {
    return (params_.tau_max + 1) * num_gains() * num_gains();
  }
  double beta() const { return params_.beta; }
  int tau_max() const { return params_.tau_max; }

  // q(a, g_s, b, g_a) by index, precomputed at construction.
  double Arrival(int a, int b, int g_s, int g_a) const;

  // Smallest arrival probability over the action and gain grid, and whether
  // it exceeds 1 - 1/rho(A)^2 (the estimation error stays bounded).
  double min_arrival() const { return min_arrival_; }
  bool boundedness_guard_holds() const {
    return min_arrival_ > BoundednessThreshold(steady_);
  }

  // Copy with the arrival table replaced; `q` is laid out like Arrival's
  // arguments, a-major then b, g_s, g_a. Used for degenerate channels.
  GameSpec WithArrivalTable(std::vector<double> q) const;

 private:
  int ArrivalIndex(int a, int b, int g_s, int g_a) const;
  void UpdateMinArrival();

  SystemModel model_;
  ChannelSpec channel_;
  GameParams params_;
  SteadySummary steady_;
  Eigen::VectorXd mu_;
  std::vector<double> arrival_;
  double min_arrival_ = 0.0;
};

int StateIndex(const GameSpec& spec, const GameState& state);
GameState StateOf(const GameSpec& spec, int index);
std::vector<GameState> EnumerateStates(const GameSpec& spec);

// r1(m, a, b) = Tr[h^m(P)] + alpha_s b - alpha_a a, with a and b given as
// action indices.
double RewardAttacker(const GameSpec& spec, int m, int a, int b);

// The two addends of r1: the holding-time term Tr[h^m(P)] and the energy
// term alpha_s b - alpha_a a.
struct RewardTerms {
  double trace = 0.0;
  double energy = 0.0;
};
RewardTerms RewardAttackerTerms(const GameSpec& spec, int m, int a, int b);
double RewardSensor(const GameSpec& spec, int m, int a, int b);

struct Transition {
  int next = 0;
  double prob = 0.0;
};

// Sparse next-state law: success moves to (0, t, e) with probability
// q w(t) w(e), failure to (min(tau + 1, tau_max), t, e) with (1 - q) w(t)
// w(e). The arrival probability uses the current gains.
std::vector<Transition> TransitionDistribution(const GameSpec& spec,
                                               const GameState& state, int a,
                                               int b);

struct SampledTransition {
  int next = 0;
  bool received = false;
};

// One draw from TransitionDistribution: arrival first, then the gains.
SampledTransition SampleTransition(const GameSpec& spec,
                                   const GameState& state, int a, int b,
                                   Rng& rng);

// A stationary policy: one mix per state index.
using Policy = std::vector<MixedStrategy>;

struct TrajectoryStep {
  int step = 0;
  int state = 0;
  int tau = 0;
  double g_s = 0.0;
  double g_a = 0.0;
  int a_index = 0;
  int b_index = 0;
  double a = 0.0;
  double b = 0.0;
  double q = 0.0;
  bool gamma = false;
  double trace_p = 0.0;
  double r1 = 0.0;
};

// Rolls out the closed loop for `horizon` steps from `start_state`. Record k
// holds the state at time k, the sampled actions, the packet outcome of that
// step and the attacker's reward.
std::vector<TrajectoryStep> SimulateTrajectory(const GameSpec& spec,
                                               const Policy& policy_a,
                                               const Policy& policy_s,
                                               int horizon, int start_state,
                                               Rng& rng);

// sum_k beta^k r1_k over a recorded trajectory.
double DiscountedReturn(const std::vector<TrajectoryStep>& trajectory,
                        double beta);

}  // namespace dosgame

#endif  // DOSGAME_GAME_H_
