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

#include "commands.h"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <tuple>

#include "ghzmpc/adversary.h"
#include "ghzmpc/boolfn.h"
#include "ghzmpc/qsim.h"

namespace ghzmpc::cli {

namespace {

using nlohmann::json;
using protocol::PartyId;

const std::array<const char*, 5> kSchemes{"A", "B", "B1sided", "C", "Multiparty"};

bool is_multiparty(const ExperimentConfig& c) { return c.scheme == "Multiparty"; }

protocol::Scheme two_party_scheme(const std::string& name) {
  if (name == "A") return protocol::Scheme::kA;
  if (name == "B") return protocol::Scheme::kB;
  if (name == "B1sided") return protocol::Scheme::kBOneSided;
  if (name == "C") return protocol::Scheme::kC;
  throw ConfigError("scheme '" + name + "' is not a two-party scheme");
}

protocol::Variant parse_variant(const std::string& name) {
  if (name == "QubitSwap") return protocol::Variant::kQubitSwap;
  if (name == "Ensemble") return protocol::Variant::kEnsemble;
  throw ConfigError("unknown variant '" + name + "' (QubitSwap or Ensemble)");
}

boolfn::BooleanFunction load_function(const ExperimentConfig& c) {
  if (c.function_file.empty()) throw ConfigError("--function is required");
  return boolfn::load_function_file(c.function_file);
}

protocol::SchemeConfig scheme_config(const ExperimentConfig& c) {
  protocol::SchemeConfig out;
  out.scheme = two_party_scheme(c.scheme);
  out.variant = parse_variant(c.variant);
  if (out.scheme == protocol::Scheme::kC) {
    out.policy = c.tester_policy.value_or(protocol::TesterPolicy{});
    out.cheat = c.cheat.value_or(protocol::CheatConfig{});
  }
  return out;
}

protocol::MultipartyConfig multiparty_config(const ExperimentConfig& c) {
  protocol::MultipartyConfig out;
  if (c.inner == "B") {
    out.inner = protocol::InnerScheme::kB;
  } else if (c.inner == "C") {
    out.inner = protocol::InnerScheme::kC;
  } else {
    throw ConfigError("inner scheme must be B or C");
  }
  out.variant = parse_variant(c.variant);
  out.policy = c.tester_policy.value_or(protocol::TesterPolicy{});
  return out;
}

std::string bits_str(const std::vector<Bit>& bits) {
  std::string s;
  for (Bit b : bits) s += static_cast<char>('0' + b);
  return s;
}

std::string inputs_str(const std::vector<std::vector<Bit>>& inputs) {
  std::string s;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i) s += ',';
    s += bits_str(inputs[i]);
  }
  return s;
}

std::vector<std::vector<Bit>> checked_inputs(const boolfn::BooleanFunction& f,
                                             const std::string& text) {
  auto inputs = parse_inputs(text);
  if (static_cast<int>(inputs.size()) != f.num_parties()) {
    throw ConfigError("expected inputs for " + std::to_string(f.num_parties()) + " parties");
  }
  for (int p = 0; p < f.num_parties(); ++p) {
    if (inputs[p].size() != f.parties()[p].variables.size()) {
      throw ConfigError("party " + f.parties()[p].name + " takes " +
                        std::to_string(f.parties()[p].variables.size()) + " bits");
    }
  }
  return inputs;
}

std::vector<std::vector<Bit>> split_assignment(const boolfn::BooleanFunction& f,
                                               boolfn::Assignment a) {
  std::vector<std::vector<Bit>> out;
  for (int p = 0; p < f.num_parties(); ++p) out.push_back(f.party_bits(a, p));
  return out;
}

json optional_bit(const std::optional<Bit>& b) { return b ? json(*b) : json(nullptr); }

struct SessionRun {
  protocol::SessionResult result;
  Bit expected = 0;
};

SessionRun run_once(const ExperimentConfig& c, const boolfn::BooleanFunction& f,
                    const std::vector<std::vector<Bit>>& inputs, std::uint64_t seed) {
  Rng rng(seed);
  SamplingChance chance(rng);
  SessionRun out;
  out.expected = f.eval(f.assignment(inputs));
  if (is_multiparty(c)) {
    const auto form = boolfn::degree2_decomposition(f, f.num_parties());
    out.result = protocol::run_multiparty(form, f.assignment(inputs), chance,
                                          multiparty_config(c));
  } else {
    if (f.num_parties() != 2) throw ConfigError("two-party schemes need a two-party function");
    const auto decomp = boolfn::inner_product_decomposition(f);
    out.result = protocol::run_session(scheme_config(c), decomp, inputs[0], inputs[1], chance);
  }
  return out;
}

Report make_report(std::string kind, const ExperimentConfig& c, json payload) {
  return {std::move(kind), c.seed, c.to_json(), std::move(payload)};
}

}  // namespace

std::vector<std::vector<Bit>> parse_inputs(const std::string& text) {
  std::vector<std::vector<Bit>> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    std::vector<Bit> bits;
    for (char ch : part) {
      if (ch == '0' || ch == '1') {
        bits.push_back(static_cast<Bit>(ch - '0'));
      } else if (ch != ' ') {
        throw ConfigError("inputs must be bit strings separated by commas");
      }
    }
    out.push_back(std::move(bits));
  }
  if (out.empty()) throw ConfigError("empty inputs");
  return out;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  try {
    if (j.contains("function_file")) c.function_file = j.at("function_file").get<std::string>();
    if (j.contains("scheme")) c.scheme = j.at("scheme").get<std::string>();
    if (j.contains("variant")) c.variant = j.at("variant").get<std::string>();
    if (j.contains("inner")) c.inner = j.at("inner").get<std::string>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tester_policy") && !j.at("tester_policy").is_null()) {
      const auto& p = j.at("tester_policy");
      protocol::TesterPolicy policy;
      policy.t_a = p.value("t_a", policy.t_a);
      policy.t_b = p.value("t_b", policy.t_b);
      policy.n_rep = p.value("n_rep", policy.n_rep);
      c.tester_policy = policy;
    }
    if (j.contains("cheat") && !j.at("cheat").is_null()) {
      c.cheat = protocol::CheatConfig::parse(j.at("cheat").get<std::string>());
    }
    if (j.contains("coalition") && !j.at("coalition").is_null()) {
      c.coalition = j.at("coalition").get<std::string>();
    }
    if (j.contains("quantum_exchange")) c.quantum_exchange = j.at("quantum_exchange").get<bool>();
    if (j.contains("inputs") && !j.at("inputs").is_null()) {
      c.inputs = j.at("inputs").get<std::string>();
    }
    if (j.contains("trials")) c.trials = j.at("trials").get<long>();
    if (j.contains("samples")) c.samples = j.at("samples").get<long>();
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<int>();
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  return c;
}

json ExperimentConfig::to_json() const {
  json j;
  j["function_file"] = function_file;
  j["scheme"] = scheme;
  j["variant"] = variant;
  j["inner"] = inner;
  j["seed"] = seed;
  if (tester_policy) {
    j["tester_policy"] = {{"t_a", tester_policy->t_a},
                          {"t_b", tester_policy->t_b},
                          {"n_rep", tester_policy->n_rep}};
  } else {
    j["tester_policy"] = nullptr;
  }
  j["cheat"] = cheat ? json(cheat->str()) : json(nullptr);
  j["coalition"] = coalition ? json(*coalition) : json(nullptr);
  j["quantum_exchange"] = quantum_exchange;
  j["inputs"] = inputs ? json(*inputs) : json(nullptr);
  j["trials"] = trials;
  j["samples"] = samples;
  j["seeds"] = seeds;
  return j;
}

void ExperimentConfig::validate() const {
  if (std::find(kSchemes.begin(), kSchemes.end(), scheme) == kSchemes.end()) {
    throw ConfigError("unknown scheme '" + scheme + "' (A, B, B1sided, C, Multiparty)");
  }
  parse_variant(variant);
  const bool tested = scheme == "C" || (scheme == "Multiparty" && inner == "C");
  if (tester_policy && !tested) {
    throw ConfigError("a tester policy applies to Scheme C only");
  }
  if (tester_policy) {
    try {
      tester_policy->validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (cheat && cheat->active() && scheme != "C") {
    throw ConfigError("cheat strategies apply to Scheme C only");
  }
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (samples < 1) throw ConfigError("samples must be at least 1");
  if (seeds < 1) throw ConfigError("seeds must be at least 1");
}

json Report::to_json() const {
  json j;
  j["kind"] = kind;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = seed;
  j["config"] = config;
  j["payload"] = payload;
  return j;
}

Report cmd_ghz_check(long samples, std::uint64_t seed) {
  if (samples < 1) throw ConfigError("samples must be at least 1");
  const auto ghz = qsim::prepare_ghz();
  json stabilizers = json::array();
  bool all_ok = true;
  for (const char* s : {"+ZZZ", "+ZXX", "+XZX", "-XXZ"}) {
    const double e = qsim::expectation(ghz, qsim::PauliString::parse(s));
    const bool ok = std::abs(e - 1.0) < 1e-12;
    all_ok = all_ok && ok;
    stabilizers.push_back({{"operator", s}, {"expectation", e}, {"ok", ok}});
  }
  Rng rng(seed);
  SamplingChance chance(rng);
  json settings = json::array();
  long total_violations = 0;
  for (Bit a : {Bit{0}, Bit{1}}) {
    for (Bit b : {Bit{0}, Bit{1}}) {
      const Bit c = a ^ b;
      long violations = 0;
      std::array<long, 3> zeros{0, 0, 0};
      for (long s = 0; s < samples; ++s) {
        auto m1 = qsim::measure_pauli(ghz, 0, qsim::MeasurementSetting{a}.axis(), chance);
        auto m2 = qsim::measure_pauli(m1.state, 1, qsim::MeasurementSetting{b}.axis(), chance);
        auto m3 = qsim::measure_pauli(m2.state, 2, qsim::MeasurementSetting{c}.axis(), chance);
        if ((m1.outcome ^ m2.outcome ^ m3.outcome) != (a & b)) ++violations;
        zeros[0] += m1.outcome == 0;
        zeros[1] += m2.outcome == 0;
        zeros[2] += m3.outcome == 0;
      }
      total_violations += violations;
      json marginals = json::array();
      for (long z : zeros) marginals.push_back(static_cast<double>(z) / samples);
      settings.push_back({{"a", a}, {"b", b}, {"violations", violations},
                          {"marginal_zero_frequency", marginals}});
    }
  }
  ExperimentConfig c;
  c.seed = seed;
  c.samples = samples;
  Report r = make_report("GhzCheck", c,
                         {{"stabilizers", stabilizers},
                          {"stabilizers_ok", all_ok},
                          {"samples", samples},
                          {"parity_law", settings},
                          {"total_violations", total_violations}});
  r.config = {{"samples", samples}, {"seed", seed}};
  return r;
}

Report cmd_decompose(const std::string& function_file) {
  const auto f = boolfn::load_function_file(function_file);
  const auto anf = boolfn::to_anf(f);
  json payload;
  payload["variables"] = f.variable_names();
  json parties = json::array();
  for (const auto& p : f.parties()) parties.push_back({{"name", p.name}, {"variables", p.variables}});
  payload["parties"] = parties;
  payload["anf"] = anf.str();
  json anf_monomials = json::array();
  for (auto m : anf.monomials()) anf_monomials.push_back(boolfn::monomial_str(m, f.variable_names()));
  payload["anf_monomials"] = anf_monomials;
  if (f.num_parties() == 2) {
    const auto d = boolfn::inner_product_decomposition(f);
    json terms = json::array();
    for (const auto& t : d.terms) terms.push_back({{"P", t.p.str()}, {"Q", t.q.str()}});
    payload["inner_product"] = {{"m", d.m()}, {"terms", terms}};
  } else {
    payload["inner_product"] = nullptr;
  }
  if (f.num_parties() >= 3) {
    try {
      const auto form = boolfn::degree2_decomposition(f, f.num_parties());
      json buckets = json::array();
      for (const auto& [pair, terms] : form.buckets) {
        json list = json::array();
        for (const auto& t : terms) {
          const char* origin = t.origin == boolfn::TermOrigin::kCrossParty ? "cross"
                               : t.origin == boolfn::TermOrigin::kLocal    ? "local"
                                                                           : "constant";
          list.push_back({{"high", t.high.str()}, {"low", t.low.str()}, {"origin", origin}});
        }
        buckets.push_back({{"pair", {f.parties()[pair.first].name, f.parties()[pair.second].name}},
                           {"terms", list}});
      }
      payload["degree2"] = {{"ok", true}, {"num_terms", form.num_terms()}, {"buckets", buckets}};
    } catch (const boolfn::Degree2ViolationError& e) {
      payload["degree2"] = {{"ok", false},
                            {"offending_monomial", e.rendered()},
                            {"message", e.what()}};
    }
  } else {
    payload["degree2"] = nullptr;
  }
  Report r;
  r.kind = "Decompose";
  r.config = {{"function_file", function_file}};
  r.payload = std::move(payload);
  return r;
}

RunOutcome cmd_run(const ExperimentConfig& c) {
  c.validate();
  const auto f = load_function(c);
  if (!c.inputs) throw ConfigError("--inputs is required for run");
  const auto inputs = checked_inputs(f, *c.inputs);
  const auto run = run_once(c, f, inputs, c.seed);
  const auto& r = run.result;
  json payload;
  payload["inputs"] = inputs_str(inputs);
  payload["expected"] = run.expected;
  payload["output"] = optional_bit(r.output);
  payload["halted"] = r.halted();
  payload["halt"] = r.halt ? json{{"repetition", r.halt->repetition}, {"reason", r.halt->reason}}
                           : json(nullptr);
  payload["repetitions"] = r.repetitions.size();
  payload["messages"] = r.transcript.messages.size();
  json views;
  for (const auto& [id, view] : r.views()) {
    views[r.transcript.party_name(id)] = view.to_json(r.transcript);
  }
  payload["views"] = views;
  return {make_report("Run", c, std::move(payload)), r.transcript.to_jsonl(), r.halted()};
}

SweepOutcome cmd_sweep(const ExperimentConfig& c) {
  c.validate();
  const auto f = load_function(c);
  struct Row {
    std::string inputs;
    std::uint64_t seed;
    std::optional<Bit> output;
    bool halted;
    std::optional<int> detection;
    Bit expected;
  };
  std::vector<Row> rows;
  for (boolfn::Assignment a = 0; a < (boolfn::Assignment{1} << f.num_variables()); ++a) {
    const auto inputs = split_assignment(f, a);
    for (int s = 0; s < c.seeds; ++s) {
      const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(s);
      const auto run = run_once(c, f, inputs, seed);
      std::optional<int> det;
      if (run.result.halt) det = run.result.halt->repetition;
      rows.push_back({inputs_str(inputs), seed, run.result.output, run.result.halted(), det,
                      run.expected});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.inputs, a.seed) < std::tie(b.inputs, b.seed);
  });
  std::string csv = "inputs,seed,output,halted,detection_repetition\n";
  long failures = 0, halts = 0;
  for (const auto& row : rows) {
    csv += row.inputs + "," + std::to_string(row.seed) + "," +
           (row.output ? std::to_string(*row.output) : std::string()) + "," +
           (row.halted ? "1" : "0") + "," +
           (row.detection ? std::to_string(*row.detection) : std::string()) + "\n";
    if (row.halted) ++halts;
    if (!row.output || *row.output != row.expected) ++failures;
  }
  json payload{{"rows", rows.size()},
               {"seeds_per_input", c.seeds},
               {"failures", failures},
               {"halts", halts}};
  return {make_report("Sweep", c, std::move(payload)), std::move(csv)};
}

Report cmd_privacy_audit(const ExperimentConfig& c) {
  c.validate();
  const auto f = load_function(c);
  std::vector<std::string> roster;
  for (const auto& p : f.parties()) roster.push_back(p.name);
  if (is_multiparty(c)) {
    if (roster.size() > 4) throw ConfigError("multiparty audits support at most 4 parties");
    const auto form = boolfn::degree2_decomposition(f, f.num_parties());
    const auto variant = parse_variant(c.variant);
    json payload;
    if (c.coalition) {
      const auto coalition = adversary::parse_coalition(*c.coalition, roster);
      const auto e = adversary::multiparty_leakage(form, coalition, variant);
      payload["audits"] = json::array({{{"coalition", e.coalition.str(roster)},
                                        {"leakage_bits", e.leakage_bits},
                                        {"ideal_leakage_bits", e.ideal_leakage_bits},
                                        {"excess_bits", e.excess_bits}}});
    } else {
      payload = adversary::threshold_audit(form, variant).to_json(roster);
    }
    return make_report("Privacy", c, std::move(payload));
  }
  if (f.num_parties() != 2) throw ConfigError("two-party schemes need a two-party function");
  roster = {f.parties()[0].name, f.parties()[1].name, "Charlie"};
  const auto decomp = boolfn::inner_product_decomposition(f);
  const auto config = scheme_config(c);
  std::vector<adversary::Coalition> coalitions;
  if (c.coalition) {
    coalitions.push_back(adversary::parse_coalition(*c.coalition, roster, c.quantum_exchange));
  } else {
    for (std::uint32_t set = 1; set < 7; ++set) {
      adversary::Coalition co;
      co.may_exchange_quantum = c.quantum_exchange;
      for (int j = 0; j < 3; ++j) {
        if (set & (1u << j)) co.members.push_back(PartyId{j});
      }
      coalitions.push_back(co);
    }
  }
  json audits = json::array();
  for (const auto& co : coalitions) {
    json entry = adversary::audit_leakage(config, decomp, co).to_json(roster);
    if (c.inputs) {
      const auto inputs = checked_inputs(f, *c.inputs);
      Rng rng(c.seed);
      SamplingChance chance(rng);
      protocol::SchemeConfig run = config;
      if (co.may_exchange_quantum) run.quantum_coalition = co.members;
      const auto session = protocol::run_session(run, decomp, inputs[0], inputs[1], chance);
      entry["observed"] =
          adversary::posterior_from_view(config, decomp, co, session.view(co.members)).to_json();
    }
    audits.push_back(entry);
  }
  return make_report("Privacy", c, {{"scheme", c.scheme}, {"audits", audits}});
}

Report cmd_attack(const ExperimentConfig& c) {
  ExperimentConfig run = c;
  if (run.scheme != "C") throw ConfigError("attack campaigns run against Scheme C");
  if (!run.cheat || !run.cheat->active()) throw ConfigError("--cheat is required for attack");
  if (!run.tester_policy) {
    run.tester_policy = protocol::TesterPolicy{};
    run.tester_policy->n_rep = kAttackRepetitionCap;
  }
  run.validate();
  const auto f = load_function(run);
  if (f.num_parties() != 2) throw ConfigError("Scheme C needs a two-party function");
  std::vector<std::vector<Bit>> inputs;
  if (run.inputs) {
    inputs = checked_inputs(f, *run.inputs);
  } else {
    for (const auto& p : f.parties()) inputs.emplace_back(p.variables.size(), Bit{1});
  }
  const auto decomp = boolfn::inner_product_decomposition(f);
  Rng rng(run.seed);
  const auto report = adversary::run_cheat_campaign(decomp, inputs[0], inputs[1],
                                                    *run.tester_policy, *run.cheat, run.trials,
                                                    rng, parse_variant(run.variant));
  json payload = report.to_json();
  payload["inputs"] = inputs_str(inputs);
  payload["n_rep_cap"] = run.tester_policy->n_rep;
  return make_report("Detection", run, std::move(payload));
}

Report cmd_epr(const ExperimentConfig& c) {
  ExperimentConfig run = c;
  run.scheme = "B1sided";
  run.validate();
  const auto f = load_function(run);
  if (f.num_parties() != 2) throw ConfigError("the EPR attack needs a two-party function");
  std::vector<Bit> x;
  if (run.inputs) {
    x = checked_inputs(f, *run.inputs)[0];
  } else {
    x.assign(f.parties()[0].variables.size(), 1);
  }
  const auto decomp = boolfn::inner_product_decomposition(f);
  Rng rng(run.seed);
  long successes = 0;
  json first;
  for (long t = 0; t < run.trials; ++t) {
    Rng trial_rng(rng.next_u64());
    const auto result = adversary::epr_attack(decomp, x, run.quantum_exchange, trial_rng);
    if (result.success) ++successes;
    if (t == 0) first = result.to_json();
  }
  json payload{{"alice_inputs", bits_str(x)},
               {"quantum_channel", run.quantum_exchange},
               {"trials", run.trials},
               {"successes", successes},
               {"success_rate", static_cast<double>(successes) / run.trials},
               {"first_trial", first}};
  return make_report("Epr", run, std::move(payload));
}

std::string resolve_output_dir(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv(kOutDirEnv)) return env;
  return {};
}

void write_file(const std::string& dir, const std::string& name, const std::string& contents) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir + ": " + ec.message());
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace ghzmpc::cli
