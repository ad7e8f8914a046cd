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

// Subcommands of the dosgame tool. Each reads an experiment configuration,
// runs one pipeline stage and writes its artifacts under the output
// directory. Given the same configuration and seed, every artifact is
// byte-identical across runs.

#ifndef DOSGAME_COMMANDS_H_
#define DOSGAME_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace dosgame {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

struct CommandOptions {
  std::string config_path;
  std::string matrix_path;  // equilibrium only
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> episodes;
  bool oracle = false;
  std::optional<std::string> out_dir;
};

const std::vector<std::string>& CommandNames();

// Runs subcommand `name`; human-readable output goes to `out`, diagnostics
// to `err`. Returns kExitOk, kExitRuntime or kExitConfig.
int RunCommand(const std::string& name, const CommandOptions& options,
               std::ostream& out, std::ostream& err);

}  // namespace dosgame

#endif  // DOSGAME_COMMANDS_H_
