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

// GHZ-based secure computation schemes executed as deterministic-given-seed
// state machines over simulated parties and channels.
//
// Every run draws all of its randomness from a Chance. Passing a
// SamplingChance gives an ordinary seeded run; the enumeration helpers at
// the bottom of this header drive the same code over every branch.

#ifndef GHZMPC_PROTOCOL_H_
#define GHZMPC_PROTOCOL_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ghzmpc/boolfn.h"
#include "ghzmpc/random.h"
#include "json.hpp"

namespace ghzmpc::protocol {

struct PartyId {
  int index = 0;
  friend auto operator<=>(const PartyId&, const PartyId&) = default;
};

inline constexpr PartyId kAlice{0};
inline constexpr PartyId kBob{1};
inline constexpr PartyId kCharlie{2};
// Recipient of broadcasts.
inline constexpr PartyId kEveryone{-1};

enum class Channel : std::uint8_t { kSecureClassical, kBroadcast, kQubitHandover };

std::string_view channel_name(Channel channel);

struct Message {
  std::uint64_t seq = 0;
  PartyId from;
  PartyId to;
  Channel channel = Channel::kSecureClassical;
  Bit bit = 0;        // classical payload
  int qubit = -1;     // handed-over qubit, kQubitHandover only
  std::string step;   // e.g. "B.10"
  int term = 0;       // 1-based term index, 0 when not per term
  int repetition = 0; // 1-based repetition index, 0 outside Scheme C
};

struct Announcement {
  PartyId party;
  Bit bit = 0;
  std::string step;
  int term = 0;
  int repetition = 0;
};

struct Transcript {
  std::vector<std::string> roster;
  std::vector<Message> messages;
  std::vector<Announcement> announcements;

  std::string party_name(PartyId id) const;
  // One JSON object per message:
  // {"seq", "from", "to", "channel", "payload", "step_label", "term", "repetition"}.
  std::string to_jsonl() const;
};

struct LabeledBit {
  PartyId owner;
  std::string label;
  int term = 0;
  int repetition = 0;
  Bit value = 0;
};

// What one party holds locally during a session.
struct PartyRecord {
  std::vector<Bit> inputs;
  std::vector<LabeledBit> randomness;
  std::vector<LabeledBit> measured;
  std::optional<Bit> output;
};

// The information available to one party or to a coalition pooling its
// classical data.
struct PartyView {
  std::vector<PartyId> members;
  std::vector<Bit> local_inputs;
  std::vector<LabeledBit> local_randomness;
  std::vector<Message> received;
  std::vector<LabeledBit> measured;
  std::vector<Announcement> announced;
  std::optional<Bit> output;

  // Canonical encoding of the classical content. Sequence numbers and qubit
  // handovers carry no information and are left out, so runs that differ
  // only in how qubits travelled compare equal.
  std::string key() const;
  nlohmann::json to_json(const Transcript& transcript) const;
  // Only what was exchanged for individual terms: session-level sums,
  // announcements and the output are dropped.
  PartyView term_phase() const;
};

struct Halt {
  int repetition = 0;
  std::string reason;  // "step 16" or "step 17"
};

struct RepetitionRecord {
  int index = 0;
  Bit alice_tested = 0;    // inputs actually zeroed
  Bit bob_tested = 0;
  Bit alice_claimed = 0;   // announced tester status
  Bit bob_claimed = 0;
  Bit value = 0;           // f computed from the announcements
};

struct SessionResult {
  std::optional<Bit> output;
  std::optional<Halt> halt;
  Transcript transcript;
  std::vector<PartyRecord> records;
  std::vector<RepetitionRecord> repetitions;

  bool halted() const { return halt.has_value(); }
  PartyView view(PartyId party) const;
  // Union of the members' views. Members are sorted and deduplicated.
  PartyView view(std::span<const PartyId> members) const;
  std::map<PartyId, PartyView> views() const;
};

enum class Scheme { kA, kB, kBOneSided, kC };
enum class Variant { kQubitSwap, kEnsemble };

std::string_view scheme_name(Scheme scheme);
std::string_view variant_name(Variant variant);

struct TesterPolicy {
  double t_a = 0.25;
  double t_b = 0.25;
  int n_rep = 20;

  // Requires 0 < t_a, t_b < 0.5 and n_rep >= 1.
  void validate() const;
};

enum class CheatStrategy { kNone, kFakePad, kFlipSum, kTesterLie };
enum class TesterLieMode { kSilentTester, kFalseClaim };

struct CheatConfig {
  CheatStrategy strategy = CheatStrategy::kNone;
  PartyId by = kAlice;
  TesterLieMode mode = TesterLieMode::kSilentTester;

  static CheatConfig none() { return {}; }
  static CheatConfig fake_pad(PartyId by) { return {CheatStrategy::kFakePad, by}; }
  static CheatConfig flip_sum(PartyId by) { return {CheatStrategy::kFlipSum, by}; }
  static CheatConfig tester_lie(PartyId by, TesterLieMode mode) {
    return {CheatStrategy::kTesterLie, by, mode};
  }
  // "none", "fakepad:alice", "flipsum:bob", "testerlie:bob:silent",
  // "testerlie:alice:falseclaim".
  static CheatConfig parse(std::string_view text);
  std::string str() const;

  bool active() const { return strategy != CheatStrategy::kNone; }
  bool is(CheatStrategy s, PartyId party) const { return strategy == s && by == party; }
  // FakePad and TesterLie need Alice or Bob; FlipSum any of the three.
  void validate() const;
};

struct SchemeConfig {
  Scheme scheme = Scheme::kA;
  Variant variant = Variant::kQubitSwap;
  TesterPolicy policy;  // Scheme C only
  CheatConfig cheat;    // Scheme C only
  // Parties that pool their qubits (a quantum channel between them) and
  // perform a joint Y(x)Y probe on each term's state before measuring.
  std::vector<PartyId> quantum_coalition;
};

// Runs one two-party session; x and y are Alice's and Bob's input bits.
// Throws std::invalid_argument on an arity mismatch or bad configuration.
SessionResult run_session(const SchemeConfig& config, const boolfn::Decomposition& decomp,
                          std::span<const Bit> x, std::span<const Bit> y, Chance& chance);

SessionResult run_scheme_a(const boolfn::Decomposition& decomp, std::span<const Bit> x,
                           std::span<const Bit> y, Rng& rng);
SessionResult run_scheme_b(const boolfn::Decomposition& decomp, std::span<const Bit> x,
                           std::span<const Bit> y, Rng& rng, Variant variant);
SessionResult run_scheme_b_one_sided(const boolfn::Decomposition& decomp,
                                     std::span<const Bit> x, std::span<const Bit> y,
                                     Rng& rng, Variant variant = Variant::kQubitSwap);
SessionResult run_scheme_c(const boolfn::Decomposition& decomp, std::span<const Bit> x,
                           std::span<const Bit> y, Rng& rng, const TesterPolicy& policy,
                           const CheatConfig& cheat, Variant variant = Variant::kQubitSwap);

// n-party degree-2 scheme.
enum class InnerScheme { kB, kC };

struct MultipartyConfig {
  InnerScheme inner = InnerScheme::kB;
  Variant variant = Variant::kQubitSwap;
  // With inner = kC every party acts as a tester with probability t_a.
  TesterPolicy policy;
};

// Third party for pair (j1, j2): the lowest index outside the pair.
PartyId nominate_third(int j1, int j2, int num_parties);

SessionResult run_multiparty(const boolfn::Degree2Form& form, boolfn::Assignment inputs,
                             Chance& chance, const MultipartyConfig& config = {});
// `inputs` holds one bit vector per party.
SessionResult run_multiparty(const boolfn::Degree2Form& form,
                             const std::vector<std::vector<Bit>>& inputs, Rng& rng,
                             const MultipartyConfig& config = {});

// ---------------------------------------------------------------------------
// Exact enumeration.

inline constexpr int kMaxBranchLog2 = 24;

struct ViewMass {
  double probability = 0.0;
  PartyView view;
};

class ViewDistribution {
 public:
  void add(const PartyView& view, double probability);
  double total() const;
  double probability_of(const std::string& key) const;
  const std::map<std::string, ViewMass>& entries() const { return entries_; }

 private:
  std::map<std::string, ViewMass> entries_;
};

double total_variation(const ViewDistribution& a, const ViewDistribution& b);

// log2 of an upper bound on the branch count (one factor 2 per random bit
// or measurement). Only kinds accepted by `filter` count; an empty filter
// counts everything.
int branch_bound_log2(const SchemeConfig& config, const boolfn::Decomposition& decomp,
                      const std::function<bool(ChoiceKind)>& filter = {});
int multiparty_branch_bound_log2(const boolfn::Degree2Form& form,
                                 const MultipartyConfig& config = {});

// Visits every branch of a session with its exact probability. Throws
// EnumerationLimitError when the bound exceeds 2^kMaxBranchLog2.
void for_each_branch(const SchemeConfig& config, const boolfn::Decomposition& decomp,
                     std::span<const Bit> x, std::span<const Bit> y,
                     const std::function<void(double, const SessionResult&)>& visit,
                     const BranchOptions& options = {});
void for_each_multiparty_branch(const boolfn::Degree2Form& form, boolfn::Assignment inputs,
                                const MultipartyConfig& config,
                                const std::function<void(double, const SessionResult&)>& visit,
                                const BranchOptions& options = {});

// Per-party view distributions of a two-party session (Alice, Bob, Charlie).
std::map<PartyId, ViewDistribution> enumerate_views(const SchemeConfig& config,
                                                    const boolfn::Decomposition& decomp,
                                                    std::span<const Bit> x,
                                                    std::span<const Bit> y);
std::vector<ViewDistribution> enumerate_coalition_views(
    const SchemeConfig& config, const boolfn::Decomposition& decomp, std::span<const Bit> x,
    std::span<const Bit> y, const std::vector<std::vector<PartyId>>& coalitions);
std::vector<ViewDistribution> enumerate_multiparty_views(
    const boolfn::Degree2Form& form, boolfn::Assignment inputs,
    const std::vector<std::vector<PartyId>>& coalitions, const MultipartyConfig& config = {});

}  // namespace ghzmpc::protocol

#endif  // GHZMPC_PROTOCOL_H_
