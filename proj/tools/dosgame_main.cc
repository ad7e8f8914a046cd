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

// Command-line driver for the attacker-sensor game experiments.

#include <cstdint>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "dosgame/commands.h"

namespace {

struct RawOptions {
  std::string config;
  std::string matrix;
  std::uint64_t seed = 0;
  std::int64_t episodes = 0;
  bool oracle = false;
  std::string out;
};

const std::map<std::string, std::string> kDescriptions = {
    {"steady", "steady-state covariance and holding-time traces"},
    {"solve", "Q-tables and policies by Shapley value iteration"},
    {"learn", "Nash Q-learning; --oracle compares against value iteration"},
    {"equilibrium", "solve a bimatrix stage game read from a matrix file"},
    {"monotone", "check the monotone-policy sufficient condition"},
    {"bayes", "type-contingent strategies under partial channel knowledge"},
    {"simulate", "estimation trajectory under a policy file"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Remote estimation under DoS jamming: stochastic game tools"};
  app.require_subcommand(1);
  RawOptions raw;
  std::map<std::string, CLI::App*> subs;
  for (const std::string& name : dosgame::CommandNames()) {
    CLI::App* sub = app.add_subcommand(name, kDescriptions.at(name));
    sub->add_option("--config", raw.config, "experiment configuration (JSON)");
    sub->add_option("--seed", raw.seed, "override the configured seed");
    sub->add_option("--episodes", raw.episodes,
                    "override the number of learning episodes");
    sub->add_flag("--oracle", raw.oracle,
                  "compare learned tables with value iteration");
    sub->add_option("--out", raw.out, "output directory");
    if (name == "equilibrium") {
      sub->add_option("matrix", raw.matrix, "stage-game matrix file");
    }
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return dosgame::kExitConfig;
  }

  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    dosgame::CommandOptions options;
    options.config_path = raw.config;
    options.matrix_path = raw.matrix;
    options.oracle = raw.oracle;
    if (sub->count("--seed")) options.seed = raw.seed;
    if (sub->count("--episodes")) options.episodes = raw.episodes;
    if (sub->count("--out")) options.out_dir = raw.out;
    return dosgame::RunCommand(name, options, std::cout, std::cerr);
  }
  return dosgame::kExitConfig;
}
