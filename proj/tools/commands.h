// Copyright 2026 The ghzmpc Authors
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

// Experiment commands behind the ghzmpc binary. Each command returns a
// Report whose payload depends only on the configuration, so re-running a
// report's embedded config reproduces it exactly.

#ifndef GHZMPC_TOOLS_COMMANDS_H_
#define GHZMPC_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghzmpc/protocol.h"
#include "json.hpp"

namespace ghzmpc::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kOutDirEnv = "GHZMPC_OUT_DIR";
inline constexpr int kAttackRepetitionCap = 200;

// Invalid or inconsistent configuration; maps to exit code 1.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string function_file;
  std::string scheme = "A";  // A, B, B1sided, C, Multiparty
  std::string variant = "QubitSwap";
  std::string inner = "B";   // Multiparty only
  std::uint64_t seed = 1;
  std::optional<protocol::TesterPolicy> tester_policy;
  std::optional<protocol::CheatConfig> cheat;
  std::optional<std::string> coalition;
  bool quantum_exchange = false;
  std::optional<std::string> inputs;  // per party, comma separated: "1,0"
  long trials = 1000;
  long samples = 10000;
  int seeds = 100;
  std::string output_dir;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  // Enforces: tester policy only with Scheme C (or Multiparty with inner
  // C); cheat only with Scheme C.
  void validate() const;
};

struct Report {
  std::string kind;  // Run, Sweep, Privacy, Detection, GhzCheck, Decompose, Epr
  std::uint64_t seed = 0;
  nlohmann::json config;
  nlohmann::json payload;

  nlohmann::json to_json() const;
};

Report cmd_ghz_check(long samples, std::uint64_t seed);
Report cmd_decompose(const std::string& function_file);

struct RunOutcome {
  Report report;
  std::string transcript_jsonl;
  bool halted = false;
};
RunOutcome cmd_run(const ExperimentConfig& config);

struct SweepOutcome {
  Report report;
  std::string csv;
};
SweepOutcome cmd_sweep(const ExperimentConfig& config);

Report cmd_privacy_audit(const ExperimentConfig& config);
Report cmd_attack(const ExperimentConfig& config);
Report cmd_epr(const ExperimentConfig& config);

// Parses "1,01" into one bit vector per party.
std::vector<std::vector<Bit>> parse_inputs(const std::string& text);

// `explicit_dir` if set, else $GHZMPC_OUT_DIR, else empty (no files).
std::string resolve_output_dir(const std::string& explicit_dir);
// Writes `contents` to dir/name, creating dir. Throws std::runtime_error.
void write_file(const std::string& dir, const std::string& name, const std::string& contents);

}  // namespace ghzmpc::cli

#endif  // GHZMPC_TOOLS_COMMANDS_H_
