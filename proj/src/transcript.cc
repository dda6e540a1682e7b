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

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "ghzmpc/protocol.h"
#include "session.h"

namespace ghzmpc::protocol {

std::string_view channel_name(Channel channel) {
  switch (channel) {
    case Channel::kSecureClassical: return "SecureClassical";
    case Channel::kBroadcast: return "Broadcast";
    case Channel::kQubitHandover: return "QubitHandover";
  }
  return "?";
}

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::kA: return "A";
    case Scheme::kB: return "B";
    case Scheme::kBOneSided: return "B1sided";
    case Scheme::kC: return "C";
  }
  return "?";
}

std::string_view variant_name(Variant variant) {
  return variant == Variant::kQubitSwap ? "QubitSwap" : "Ensemble";
}

std::string Transcript::party_name(PartyId id) const {
  if (id == kEveryone) return "*";
  if (id.index >= 0 && id.index < static_cast<int>(roster.size())) return roster[id.index];
  return "party" + std::to_string(id.index);
}

std::string Transcript::to_jsonl() const {
  std::string out;
  for (const auto& m : messages) {
    nlohmann::ordered_json line;
    line["seq"] = m.seq;
    line["from"] = party_name(m.from);
    line["to"] = party_name(m.to);
    line["channel"] = channel_name(m.channel);
    if (m.channel == Channel::kQubitHandover) {
      line["payload"] = "qubit:" + std::to_string(m.qubit);
    } else {
      line["payload"] = m.bit;
    }
    line["step_label"] = m.step;
    line["term"] = m.term;
    line["repetition"] = m.repetition;
    out += line.dump();
    out += '\n';
  }
  return out;
}

namespace {

void append_labeled(std::string& out, const LabeledBit& b) {
  out += std::to_string(b.owner.index) + '/' + b.label + '/' + std::to_string(b.term) + '/' +
         std::to_string(b.repetition) + '=' + static_cast<char>('0' + b.value) + ';';
}

nlohmann::ordered_json labeled_json(const LabeledBit& b, const Transcript& t) {
  return {{"owner", t.party_name(b.owner)}, {"label", b.label}, {"term", b.term},
          {"repetition", b.repetition}, {"value", b.value}};
}

}  // namespace

std::string PartyView::key() const {
  std::string out = "I:";
  for (Bit b : local_inputs) out += static_cast<char>('0' + b);
  out += "|R:";
  for (const auto& r : local_randomness) append_labeled(out, r);
  out += "|C:";
  for (const auto& m : received) {
    if (m.channel == Channel::kQubitHandover) continue;
    out += std::to_string(m.from.index) + '>' + std::to_string(m.to.index) + '/' + m.step +
           '/' + std::to_string(m.term) + '/' + std::to_string(m.repetition) + '=' +
           static_cast<char>('0' + m.bit) + ';';
  }
  out += "|M:";
  for (const auto& r : measured) append_labeled(out, r);
  out += "|A:";
  for (const auto& a : announced) {
    out += std::to_string(a.party.index) + '/' + a.step + '/' + std::to_string(a.term) + '/' +
           std::to_string(a.repetition) + '=' + static_cast<char>('0' + a.bit) + ';';
  }
  out += "|O:";
  out += output ? static_cast<char>('0' + *output) : '-';
  return out;
}

nlohmann::json PartyView::to_json(const Transcript& t) const {
  nlohmann::ordered_json out;
  auto members_json = nlohmann::ordered_json::array();
  for (auto m : members) members_json.push_back(t.party_name(m));
  out["members"] = members_json;
  out["local_inputs"] = local_inputs;
  auto rand = nlohmann::ordered_json::array();
  for (const auto& r : local_randomness) rand.push_back(labeled_json(r, t));
  out["local_randomness"] = rand;
  auto recv = nlohmann::ordered_json::array();
  for (const auto& m : received) {
    nlohmann::ordered_json j{{"seq", m.seq}, {"from", t.party_name(m.from)},
                             {"to", t.party_name(m.to)}, {"channel", channel_name(m.channel)},
                             {"step_label", m.step}, {"term", m.term},
                             {"repetition", m.repetition}};
    if (m.channel == Channel::kQubitHandover) {
      j["payload"] = "qubit:" + std::to_string(m.qubit);
    } else {
      j["payload"] = m.bit;
    }
    recv.push_back(j);
  }
  out["received"] = recv;
  auto meas = nlohmann::ordered_json::array();
  for (const auto& r : measured) meas.push_back(labeled_json(r, t));
  out["measured"] = meas;
  auto ann = nlohmann::ordered_json::array();
  for (const auto& a : announced) {
    ann.push_back({{"party", t.party_name(a.party)}, {"bit", a.bit}, {"step_label", a.step},
                   {"term", a.term}, {"repetition", a.repetition}});
  }
  out["announced"] = ann;
  out["output"] = output ? nlohmann::ordered_json(*output) : nlohmann::ordered_json(nullptr);
  return nlohmann::json::parse(out.dump());
}

PartyView PartyView::term_phase() const {
  PartyView out = *this;
  std::erase_if(out.received, [](const Message& m) { return m.term == 0; });
  std::erase_if(out.announced, [](const Announcement& a) { return a.term == 0; });
  out.output.reset();
  return out;
}

PartyView SessionResult::view(PartyId party) const {
  const PartyId members[] = {party};
  return view(members);
}

PartyView SessionResult::view(std::span<const PartyId> members_in) const {
  std::vector<PartyId> members(members_in.begin(), members_in.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto is_member = [&](PartyId p) {
    return std::binary_search(members.begin(), members.end(), p);
  };
  PartyView v;
  v.members = members;
  for (PartyId m : members) {
    const auto& rec = records.at(m.index);
    v.local_inputs.insert(v.local_inputs.end(), rec.inputs.begin(), rec.inputs.end());
    v.local_randomness.insert(v.local_randomness.end(), rec.randomness.begin(),
                              rec.randomness.end());
    v.measured.insert(v.measured.end(), rec.measured.begin(), rec.measured.end());
    if (rec.output && !v.output) v.output = rec.output;
  }
  for (const auto& msg : transcript.messages) {
    if (msg.channel == Channel::kBroadcast || is_member(msg.to)) v.received.push_back(msg);
  }
  v.announced = transcript.announcements;
  return v;
}

std::map<PartyId, PartyView> SessionResult::views() const {
  std::map<PartyId, PartyView> out;
  for (int i = 0; i < static_cast<int>(records.size()); ++i) out[PartyId{i}] = view(PartyId{i});
  return out;
}

void TesterPolicy::validate() const {
  if (!(t_a > 0.0 && t_a < 0.5) || !(t_b > 0.0 && t_b < 0.5)) {
    throw std::invalid_argument("tester probabilities must lie in (0, 0.5)");
  }
  if (n_rep < 1) throw std::invalid_argument("N_rep must be at least 1");
}

namespace {

PartyId parse_party(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
  if (lower == "alice") return kAlice;
  if (lower == "bob") return kBob;
  if (lower == "charlie") return kCharlie;
  throw std::invalid_argument("unknown party '" + std::string(name) + "'");
}

const char* party_label(PartyId p) {
  switch (p.index) {
    case 0: return "alice";
    case 1: return "bob";
    case 2: return "charlie";
  }
  return "?";
}

}  // namespace

CheatConfig CheatConfig::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(static_cast<char>(::tolower(static_cast<unsigned char>(c))));
    }
  }
  parts.push_back(current);
  CheatConfig out;
  if (parts[0] == "none" && parts.size() == 1) return out;
  if (parts[0] == "fakepad" && parts.size() == 2) {
    out = fake_pad(parse_party(parts[1]));
  } else if (parts[0] == "flipsum" && parts.size() == 2) {
    out = flip_sum(parse_party(parts[1]));
  } else if (parts[0] == "testerlie" && parts.size() == 3) {
    TesterLieMode mode;
    if (parts[2] == "silent" || parts[2] == "silenttester") {
      mode = TesterLieMode::kSilentTester;
    } else if (parts[2] == "falseclaim") {
      mode = TesterLieMode::kFalseClaim;
    } else {
      throw std::invalid_argument("unknown tester-lie mode '" + parts[2] + "'");
    }
    out = tester_lie(parse_party(parts[1]), mode);
  } else {
    throw std::invalid_argument("cannot parse cheat '" + std::string(text) + "'");
  }
  out.validate();
  return out;
}

std::string CheatConfig::str() const {
  switch (strategy) {
    case CheatStrategy::kNone: return "none";
    case CheatStrategy::kFakePad: return std::string("fakepad:") + party_label(by);
    case CheatStrategy::kFlipSum: return std::string("flipsum:") + party_label(by);
    case CheatStrategy::kTesterLie:
      return std::string("testerlie:") + party_label(by) +
             (mode == TesterLieMode::kSilentTester ? ":silent" : ":falseclaim");
  }
  return "?";
}

void CheatConfig::validate() const {
  if (strategy == CheatStrategy::kNone) return;
  if (by.index < 0 || by.index > 2) {
    throw std::invalid_argument("cheating party must be Alice, Bob or Charlie");
  }
  if ((strategy == CheatStrategy::kFakePad || strategy == CheatStrategy::kTesterLie) &&
      by == kCharlie) {
    throw std::invalid_argument("only Alice or Bob can " + str().substr(0, str().find(':')));
  }
}

namespace internal {

Session::Session(std::vector<std::string> roster, Chance& chance)
    : chance_(chance), records_(roster.size()) {
  transcript_.roster = std::move(roster);
}

void Session::set_inputs(PartyId party, std::vector<Bit> bits) {
  record(party).inputs = std::move(bits);
}

Bit Session::draw(PartyId party, ChoiceKind kind, double p_one, const std::string& label,
                  int term, int repetition) {
  const Bit value = chance_.draw(kind, p_one);
  note_randomness(party, label, term, repetition, value);
  return value;
}

void Session::note_randomness(PartyId party, const std::string& label, int term,
                              int repetition, Bit value) {
  record(party).randomness.push_back({party, label, term, repetition, value});
}

void Session::note_measurement(PartyId party, const std::string& label, int term,
                               int repetition, Bit value) {
  record(party).measured.push_back({party, label, term, repetition, value});
}

void Session::send(PartyId from, PartyId to, Bit bit, const std::string& step, int term,
                   int repetition) {
  if (to == kEveryone || to == from) {
    throw std::logic_error("secure classical messages need exactly one other recipient");
  }
  transcript_.messages.push_back(
      {next_seq_++, from, to, Channel::kSecureClassical, bit, -1, step, term, repetition});
}

void Session::hand_over(PartyId from, PartyId to, int qubit, const std::string& step,
                        int term, int repetition) {
  transcript_.messages.push_back(
      {next_seq_++, from, to, Channel::kQubitHandover, 0, qubit, step, term, repetition});
}

void Session::broadcast(PartyId from, Bit bit, const std::string& step, int term,
                        int repetition) {
  transcript_.messages.push_back(
      {next_seq_++, from, kEveryone, Channel::kBroadcast, bit, -1, step, term, repetition});
  transcript_.announcements.push_back({from, bit, step, term, repetition});
}

SessionResult Session::finish(std::optional<Bit> output, std::optional<Halt> halt,
                              std::vector<RepetitionRecord> repetitions) {
  SessionResult result;
  result.output = output;
  result.halt = std::move(halt);
  result.transcript = std::move(transcript_);
  result.records = std::move(records_);
  result.repetitions = std::move(repetitions);
  return result;
}

GhzRegister::GhzRegister(qsim::StateVector state, std::array<PartyId, 3> holders)
    : state_(std::move(state)), holders_(holders) {}

int GhzRegister::qubit_of(PartyId party) const {
  int found = -1;
  for (int q = 0; q < 3; ++q) {
    if (holders_[q] == party) {
      if (found >= 0) throw std::logic_error("a party holds two qubits");
      found = q;
    }
  }
  if (found < 0) throw std::logic_error("party holds no qubit");
  return found;
}

void GhzRegister::rotate(Session& session, const std::array<PartyId, 3>& cycle,
                         const std::string& step, int term, int repetition) {
  std::array<PartyId, 3> next = holders_;
  for (int q = 0; q < 3; ++q) {
    const auto it = std::find(cycle.begin(), cycle.end(), holders_[q]);
    if (it == cycle.end()) throw std::logic_error("qubit held outside the cycle");
    const PartyId to = cycle[(it - cycle.begin() + 1) % 3];
    session.hand_over(holders_[q], to, q, step, term, repetition);
    next[q] = to;
  }
  holders_ = next;
  for (PartyId p : cycle) qubit_of(p);
}

void GhzRegister::hadamard(PartyId actor, int qubit) {
  if (holders_[qubit] != actor) throw std::logic_error("Hadamard on a qubit not held");
  state_ = qsim::apply_hadamard(state_, qubit);
}

Bit GhzRegister::measure(Session& session, PartyId party, qsim::Axis axis) {
  auto result = qsim::measure_pauli(state_, qubit_of(party), axis, session.chance());
  state_ = std::move(result.state);
  return result.outcome;
}

Bit GhzRegister::probe_yy(Session& session, int first, int second) {
  qsim::PauliString op = qsim::PauliString::parse("III");
  op.axes[first] = qsim::Axis::kY;
  op.axes[second] = qsim::Axis::kY;
  auto result = qsim::measure(state_, op, session.chance());
  state_ = std::move(result.state);
  return result.outcome;
}

}  // namespace internal
}  // namespace ghzmpc::protocol
