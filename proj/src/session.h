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

// Scheduler internals shared by the scheme implementations.

#ifndef GHZMPC_SRC_SESSION_H_
#define GHZMPC_SRC_SESSION_H_

#include <array>
#include <string>
#include <vector>

#include "ghzmpc/protocol.h"
#include "ghzmpc/qsim.h"

namespace ghzmpc::protocol::internal {

// Step labels: `prefix` + "." + (base step + offset). Scheme C reuses the
// Scheme B term logic two steps later than Scheme B numbers it.
struct StepLabels {
  const char* prefix;
  int offset;
  std::string operator()(int base_step) const {
    return std::string(prefix) + "." + std::to_string(base_step + offset);
  }
};

class Session {
 public:
  Session(std::vector<std::string> roster, Chance& chance);

  Chance& chance() { return chance_; }
  int num_parties() const { return static_cast<int>(records_.size()); }
  PartyRecord& record(PartyId party) { return records_.at(party.index); }

  void set_inputs(PartyId party, std::vector<Bit> bits);
  Bit draw(PartyId party, ChoiceKind kind, double p_one, const std::string& label,
           int term, int repetition);
  void note_randomness(PartyId party, const std::string& label, int term, int repetition,
                       Bit value);
  void note_measurement(PartyId party, const std::string& label, int term, int repetition,
                        Bit value);

  void send(PartyId from, PartyId to, Bit bit, const std::string& step, int term,
            int repetition);
  void hand_over(PartyId from, PartyId to, int qubit, const std::string& step, int term,
                 int repetition);
  void broadcast(PartyId from, Bit bit, const std::string& step, int term, int repetition);

  SessionResult finish(std::optional<Bit> output, std::optional<Halt> halt,
                       std::vector<RepetitionRecord> repetitions = {});

 private:
  Chance& chance_;
  Transcript transcript_;
  std::vector<PartyRecord> records_;
  std::uint64_t next_seq_ = 1;
};

// Three qubits of one GHZ resource and who holds each of them.
class GhzRegister {
 public:
  GhzRegister(qsim::StateVector state, std::array<PartyId, 3> holders);

  const qsim::StateVector& state() const { return state_; }
  int qubit_of(PartyId party) const;
  PartyId holder(int qubit) const { return holders_[qubit]; }

  // Simultaneously every holder passes its qubit to the next role in
  // `cycle` (cycle[0] -> cycle[1] -> cycle[2] -> cycle[0]). Throws
  // std::logic_error if afterwards some role does not hold exactly one qubit.
  void rotate(Session& session, const std::array<PartyId, 3>& cycle, const std::string& step,
              int term, int repetition);
  void hadamard(PartyId actor, int qubit);
  Bit measure(Session& session, PartyId party, qsim::Axis axis);
  // Joint Y(x)Y on two qubits; returns the outcome bit. Leaves eigenstates
  // untouched.
  Bit probe_yy(Session& session, int first, int second);

 private:
  qsim::StateVector state_;
  std::array<PartyId, 3> holders_;
};

struct TermRoles {
  PartyId alice;
  PartyId bob;
  PartyId charlie;
};

struct TermMeasurements {
  Bit alice = 0;
  Bit bob = 0;
  Bit charlie = 0;
};

struct PaddedTermOptions {
  Variant variant = Variant::kQubitSwap;
  StepLabels labels{"B", 0};
  int term = 0;
  int repetition = 0;
  Bit alice_fakes_pad = 0;
  Bit bob_fakes_pad = 0;
  std::vector<PartyId> quantum_coalition;
  const char* measurement_label = "M";
};

// Scheme B steps 3-11 for one term: pads, padding of the third qubit,
// padded bits to the third party, and the three measurements. Each role
// records its own outcome.
TermMeasurements run_padded_term(Session& session, const TermRoles& roles, Bit p, Bit q,
                                 const PaddedTermOptions& options);

// Roster for a Degree2Form: the party names from the function.
std::vector<std::string> multiparty_roster(const boolfn::Degree2Form& form);

// Roles and input bits of every term of the form in execution order.
struct MultipartyTerm {
  boolfn::PartyPair pair;
  const boolfn::PairTerm* term;
  TermRoles roles;  // alice = lower index, bob = higher index, charlie = nominee
};
std::vector<MultipartyTerm> multiparty_terms(const boolfn::Degree2Form& form);

}  // namespace ghzmpc::protocol::internal

#endif  // GHZMPC_SRC_SESSION_H_
