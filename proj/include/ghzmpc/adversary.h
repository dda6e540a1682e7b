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

// Leakage measurement and attacks against the schemes in protocol.h.
//
// Leakage is the mutual information, in bits, between the honest parties'
// inputs (uniform prior unless stated otherwise) and the coalition's view,
// conditioned on the coalition's own inputs. The ideal baseline replaces the
// view by the function output when some member learns it.

#ifndef GHZMPC_ADVERSARY_H_
#define GHZMPC_ADVERSARY_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghzmpc/boolfn.h"
#include "ghzmpc/protocol.h"
#include "ghzmpc/qsim.h"
#include "ghzmpc/random.h"
#include "json.hpp"

namespace ghzmpc::adversary {

using protocol::PartyId;

struct Coalition {
  std::vector<PartyId> members;
  // Members may pool qubits and measure them jointly.
  bool may_exchange_quantum = false;

  // Throws std::invalid_argument unless members are distinct parties of an
  // n-party session and at most n-1 of them.
  void validate(int num_parties) const;
  std::string str(const std::vector<std::string>& roster) const;
};

// Parses "charlie,bob" (names or indices) against `roster`. Members come back
// sorted; the result is validated against the roster size.
Coalition parse_coalition(const std::string& text, const std::vector<std::string>& roster,
                          bool may_exchange_quantum = false);

// The observed view has probability 0 under every candidate input.
class InconsistentViewError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mutual information I(H; V) in bits for a prior over H and the conditional
// distributions P(V | H = h), given as maps from view keys to probability.
double mutual_information(const std::vector<double>& prior,
                          const std::vector<std::map<std::string, double>>& likelihoods);

struct PosteriorReport {
  std::vector<std::string> honest_variables;
  // Indexed by honest assignment: bit k is honest_variables[k].
  std::vector<double> prior;
  std::vector<double> posterior;
  double leakage_bits = 0.0;
  double ideal_leakage_bits = 0.0;

  double excess_bits() const { return leakage_bits - ideal_leakage_bits; }
  nlohmann::json to_json() const;
};

// Exact Bayes over the honest inputs of a two-party session. The coalition's
// own inputs are read from `observed`. `prior` defaults to uniform.
PosteriorReport posterior_from_view(const protocol::SchemeConfig& config,
                                    const boolfn::Decomposition& decomp,
                                    const Coalition& coalition,
                                    const protocol::PartyView& observed,
                                    const std::vector<double>& prior = {});

struct LeakageAudit {
  Coalition coalition;
  std::vector<Bit> worst_inputs;  // coalition inputs attaining the maximum
  double leakage_bits = 0.0;
  double ideal_leakage_bits = 0.0;
  double excess_bits = 0.0;       // max over coalition inputs

  nlohmann::json to_json(const std::vector<std::string>& roster) const;
};

// Worst case over the coalition's own inputs of the excess leakage, by
// exhaustive enumeration of every session branch.
LeakageAudit audit_leakage(const protocol::SchemeConfig& config,
                           const boolfn::Decomposition& decomp, const Coalition& coalition);
// Several coalitions at once; classical coalitions share one enumeration.
std::vector<LeakageAudit> audit_leakage(const protocol::SchemeConfig& config,
                                        const boolfn::Decomposition& decomp,
                                        const std::vector<Coalition>& coalitions);

// Whether any member of `coalition` receives the output under `scheme`.
bool learns_output(protocol::Scheme scheme, const Coalition& coalition);

// ---------------------------------------------------------------------------
// Pad detection.

class AttackUnavailableError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PadInference {
  Bit inferred_pad_parity = 0;
  qsim::StateVector state;  // after the attack
};

// Joint Y(x)Y on the padded qubit 2 and the lowest other attacker qubit.
// Throws AttackUnavailableError unless `attacker_qubits` has two or more
// entries including qubit 2.
PadInference pad_detection_attack(const qsim::StateVector& padded_state,
                                  const std::vector<int>& attacker_qubits, Rng& rng);

// Best single-qubit attempt: measure Y on qubit 2 and take the outcome.
PadInference single_qubit_pad_guess(const qsim::StateVector& padded_state, Rng& rng);

// ---------------------------------------------------------------------------
// EPR polling against one-sided Scheme B with Bob and Charlie corrupted.

struct PolledOutput {
  std::vector<Bit> y;
  Bit value = 0;         // claimed f(x, y)
  bool reliable = false; // fixed by the state with certainty
};

struct EprResult {
  bool quantum_channel = false;
  bool success = false;  // every candidate polled reliably and correctly
  std::vector<PolledOutput> polled_outputs;
  // Alice inputs consistent with the reliable polls.
  std::vector<std::vector<Bit>> consistent_alice_inputs;

  nlohmann::json to_json() const;
};

EprResult epr_attack(const boolfn::Decomposition& decomp, std::span<const Bit> x,
                     bool quantum_channel_allowed, Rng& rng);

// ---------------------------------------------------------------------------
// Cheat campaigns against Scheme C.

struct DetectionReport {
  protocol::CheatConfig cheat;
  protocol::TesterPolicy policy;
  long trials = 0;
  long detected = 0;
  long halted_step16 = 0;
  long halted_step17 = 0;
  long cap_hits = 0;       // ran all repetitions without a halt
  long wrong_outputs = 0;  // not halted and output differs from f
  long inconclusive = 0;   // not halted and no repetition without testers
  std::optional<double> mean_detection_repetition;
  std::optional<double> closed_form_value;        // (1 - t_self) / t_other
  std::optional<double> geometric_formula_value;  // 1 / P(detect per repetition)
  std::string verdict;  // "detected", "harmless" or "mixed"

  double detection_rate() const {
    return trials ? static_cast<double>(detected) / static_cast<double>(trials) : 0.0;
  }
  nlohmann::json to_json() const;
};

// Each trial reseeds from rng.next_u64(). Throws std::invalid_argument for
// trials < 1 or an inactive cheat.
DetectionReport run_cheat_campaign(const boolfn::Decomposition& decomp, std::span<const Bit> x,
                                   std::span<const Bit> y, const protocol::TesterPolicy& policy,
                                   const protocol::CheatConfig& cheat, long trials, Rng& rng,
                                   protocol::Variant variant = protocol::Variant::kQubitSwap);

// ---------------------------------------------------------------------------
// n-party threshold.

struct ThresholdEntry {
  Coalition coalition;
  double leakage_bits = 0.0;
  double ideal_leakage_bits = 0.0;
  double excess_bits = 0.0;  // worst case over coalition inputs
};

struct ThresholdReport {
  int num_parties = 0;
  std::vector<ThresholdEntry> entries;
  std::map<int, double> max_excess_by_size;

  nlohmann::json to_json(const std::vector<std::string>& roster) const;
};

// Leakage of one coalition in the n-party scheme (inner Scheme B). Terms are
// independent given the inputs, so the computation folds one term at a time
// over likelihood classes instead of enumerating whole sessions.
ThresholdEntry multiparty_leakage(const boolfn::Degree2Form& form, const Coalition& coalition,
                                  protocol::Variant variant = protocol::Variant::kQubitSwap);

// Same quantity from full-session enumeration; feasible for few terms only.
ThresholdEntry multiparty_leakage_exhaustive(
    const boolfn::Degree2Form& form, const Coalition& coalition,
    protocol::Variant variant = protocol::Variant::kQubitSwap);

// Every coalition of size 1..n-1. Requires n <= 4.
ThresholdReport threshold_audit(const boolfn::Degree2Form& form,
                                protocol::Variant variant = protocol::Variant::kQubitSwap);

}  // namespace ghzmpc::adversary

#endif  // GHZMPC_ADVERSARY_H_
