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

// ghzmpc: command-line front end.
//
// Exit codes: 0 success, 2 a run halted on detected cheating, 1 usage or
// configuration error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.h"

namespace {

using ghzmpc::cli::ConfigError;
using ghzmpc::cli::ExperimentConfig;
using ghzmpc::cli::Report;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDetected = 2;

struct Flags {
  std::string config_file;
  std::string function;
  std::string scheme;
  std::string variant;
  std::string inner;
  std::uint64_t seed = 1;
  double ta = 0.25;
  double tb = 0.25;
  int nrep = 20;
  std::string cheat;
  std::string coalition;
  bool quantum_exchange = false;
  std::string inputs;
  long trials = 1000;
  long samples = 10000;
  int seeds = 100;
  std::string out;
};

struct Options {
  CLI::Option* seed = nullptr;
  CLI::Option* ta = nullptr;
  CLI::Option* tb = nullptr;
  CLI::Option* nrep = nullptr;
  CLI::Option* trials = nullptr;
  CLI::Option* seeds = nullptr;
};

void add_experiment_flags(CLI::App* cmd, Flags& f, Options& o) {
  cmd->add_option("--config", f.config_file, "JSON experiment config");
  cmd->add_option("--function", f.function, "function definition file (JSON)");
  cmd->add_option("--scheme", f.scheme, "A, B, B1sided, C or Multiparty");
  cmd->add_option("--variant", f.variant, "QubitSwap or Ensemble");
  cmd->add_option("--inner", f.inner, "inner scheme for Multiparty: B or C");
  o.seed = cmd->add_option("--seed", f.seed, "64-bit seed");
  o.ta = cmd->add_option("--ta", f.ta, "Alice's tester probability");
  o.tb = cmd->add_option("--tb", f.tb, "Bob's tester probability");
  o.nrep = cmd->add_option("--nrep", f.nrep, "repetitions N_rep");
  cmd->add_option("--cheat", f.cheat, "none, fakepad:P, flipsum:P, testerlie:P:silent|falseclaim");
  cmd->add_option("--coalition", f.coalition, "comma separated party names");
  cmd->add_flag("--quantum-exchange", f.quantum_exchange, "coalition may pool qubits");
  cmd->add_option("--inputs", f.inputs, "per-party bit strings, e.g. 1,0");
  o.trials = cmd->add_option("--trials", f.trials, "campaign trials");
  o.seeds = cmd->add_option("--seeds", f.seeds, "seeds per input in a sweep");
  cmd->add_option("--out", f.out, "output directory");
}

ExperimentConfig build_config(const Flags& f, const Options& o) {
  ExperimentConfig c;
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    if (!in) throw ConfigError("cannot open config " + f.config_file);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    c = ExperimentConfig::from_json(j);
  }
  if (!f.function.empty()) c.function_file = f.function;
  if (!f.scheme.empty()) c.scheme = f.scheme;
  if (!f.variant.empty()) c.variant = f.variant;
  if (!f.inner.empty()) c.inner = f.inner;
  if (o.seed->count()) c.seed = f.seed;
  if (o.ta->count() || o.tb->count() || o.nrep->count()) {
    ghzmpc::protocol::TesterPolicy p = c.tester_policy.value_or(ghzmpc::protocol::TesterPolicy{});
    if (o.ta->count()) p.t_a = f.ta;
    if (o.tb->count()) p.t_b = f.tb;
    if (o.nrep->count()) p.n_rep = f.nrep;
    c.tester_policy = p;
  }
  if (!f.cheat.empty()) c.cheat = ghzmpc::protocol::CheatConfig::parse(f.cheat);
  if (!f.coalition.empty()) c.coalition = f.coalition;
  if (f.quantum_exchange) c.quantum_exchange = true;
  if (!f.inputs.empty()) c.inputs = f.inputs;
  if (o.trials->count()) c.trials = f.trials;
  if (o.seeds->count()) c.seeds = f.seeds;
  if (!f.out.empty()) c.output_dir = f.out;
  return c;
}

void emit(const Report& report, const std::string& out_flag, const std::string& name) {
  const std::string text = report.to_json().dump(2) + "\n";
  std::cout << text;
  const std::string dir = ghzmpc::cli::resolve_output_dir(out_flag);
  if (!dir.empty()) ghzmpc::cli::write_file(dir, name, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GHZ-based secure multi-party computation simulator"};
  app.require_subcommand(1);
  Flags flags;

  auto* ghz = app.add_subcommand("ghz-check", "verify stabilizers and the parity law");
  ghz->add_option("--samples", flags.samples, "draws per setting");
  ghz->add_option("--seed", flags.seed, "64-bit seed");
  ghz->add_option("--out", flags.out, "output directory");

  auto* dec = app.add_subcommand("decompose", "ANF, inner-product terms and degree-2 form");
  dec->add_option("--function", flags.function, "function definition file")->required();
  dec->add_option("--out", flags.out, "output directory");

  std::vector<std::pair<CLI::App*, Options>> experiments;
  for (const char* name : {"run", "sweep", "privacy-audit", "attack", "epr"}) {
    auto* cmd = app.add_subcommand(name, "");
    experiments.push_back({cmd, {}});
  }
  experiments[0].first->description("execute one session");
  experiments[1].first->description("all inputs x seeds grid, CSV output");
  experiments[2].first->description("exact leakage per coalition");
  experiments[3].first->description("cheat detection campaign against Scheme C");
  experiments[4].first->description("EPR polling against one-sided Scheme B");
  for (auto& [cmd, o] : experiments) add_experiment_flags(cmd, flags, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (ghz->parsed()) {
      emit(ghzmpc::cli::cmd_ghz_check(flags.samples, flags.seed), flags.out, "ghz_check.json");
      return kExitOk;
    }
    if (dec->parsed()) {
      emit(ghzmpc::cli::cmd_decompose(flags.function), flags.out, "decompose.json");
      return kExitOk;
    }
    for (auto& [cmd, o] : experiments) {
      if (!cmd->parsed()) continue;
      const ExperimentConfig config = build_config(flags, o);
      const std::string out = config.output_dir;
      const std::string name = cmd->get_name();
      if (name == "run") {
        auto outcome = ghzmpc::cli::cmd_run(config);
        emit(outcome.report, out, "run.json");
        const std::string dir = ghzmpc::cli::resolve_output_dir(out);
        if (!dir.empty()) ghzmpc::cli::write_file(dir, "transcript.jsonl", outcome.transcript_jsonl);
        return outcome.halted ? kExitDetected : kExitOk;
      }
      if (name == "sweep") {
        auto outcome = ghzmpc::cli::cmd_sweep(config);
        emit(outcome.report, out, "sweep.json");
        const std::string dir = ghzmpc::cli::resolve_output_dir(out);
        if (!dir.empty()) ghzmpc::cli::write_file(dir, "sweep.csv", outcome.csv);
        return kExitOk;
      }
      if (name == "privacy-audit") {
        emit(ghzmpc::cli::cmd_privacy_audit(config), out, "privacy.json");
      } else if (name == "attack") {
        emit(ghzmpc::cli::cmd_attack(config), out, "detection.json");
      } else {
        emit(ghzmpc::cli::cmd_epr(config), out, "epr.json");
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
