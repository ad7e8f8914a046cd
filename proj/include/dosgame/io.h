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

// Experiment configuration and the on-disk formats of tables, policies and
// trajectories. Numbers are written in shortest round-trip form, so reading
// a file back reproduces the written doubles exactly.

#ifndef DOSGAME_IO_H_
#define DOSGAME_IO_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dosgame/bayesian.h"
#include "dosgame/equilibria.h"
#include "dosgame/game.h"
#include "dosgame/nashq.h"

namespace dosgame {

using Json = nlohmann::ordered_json;

// Malformed or invalid configuration; `what()` starts with the field path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message) {}
};

struct BayesConfig {
  int m = 0;
  BeliefMode belief = BeliefMode::kStationary;
  BayesPayoff payoff = BayesPayoff::kExpectedNext;
};

struct SimulateConfig {
  int horizon = 100;
  int start_state = 0;
  // Policy CSV; empty means <output_dir>/oracle_policies.csv.
  std::string policy_file;
};

struct ExperimentConfig {
  GameSpec game;
  LearnConfig learn;
  std::optional<BayesConfig> bayes;
  SimulateConfig simulate;
  std::string output_dir = "out";
  std::uint64_t seed = 0;
};

// Parses and validates a configuration document. Throws ConfigError.
ExperimentConfig ParseConfig(const Json& doc);
ExperimentConfig LoadConfig(const std::filesystem::path& path);

std::string FormatDouble(double x);

// Writes `content` to `path`, creating parent directories.
void WriteTextFile(const std::filesystem::path& path,
                   const std::string& content);
std::string ReadTextFile(const std::filesystem::path& path);

// Q-tables as JSON keyed by state and action pair.
Json QTableToJson(const GameSpec& spec, const QTable& q);
QTable QTableFromJson(const GameSpec& spec, const Json& doc);

// One player's table with rows s0..s{N-1} and one column per action pair
// (a1, a2).
std::string QTableCsv(const GameSpec& spec, const QTable& q, int player);

// Per-state equilibrium mixes, values and gaps.
std::string PoliciesCsv(const GameSpec& spec,
                        const std::vector<EquilibriumResult>& eq);
std::pair<Policy, Policy> ParsePoliciesCsv(const GameSpec& spec,
                                           const std::string& text);

std::string TrajectoryCsv(const std::vector<TrajectoryStep>& trajectory);

std::string CurveCsv(const GameSpec& spec, const std::vector<CurvePoint>& curve);

// Rows: actions; columns: own-type gain values. `player` is 1 or 2.
std::string TypeStrategyCsv(const GameSpec& spec, const TypeStrategy& s,
                            int player);

// Two whitespace-separated matrices separated by a blank line; '#' starts a
// comment. An optional line "profile p_1 .. p_m | q_1 .. q_n" names a
// strategy pair whose deviation gap is reported.
struct MatrixFile {
  Eigen::MatrixXd payoff_p1;
  Eigen::MatrixXd payoff_p2;
  std::optional<std::pair<MixedStrategy, MixedStrategy>> profile;
};
MatrixFile ParseMatrixFile(const std::string& text);

}  // namespace dosgame

#endif  // DOSGAME_IO_H_
