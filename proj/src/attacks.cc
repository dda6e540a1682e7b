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
#include <array>

#include "ghzmpc/adversary.h"

namespace ghzmpc::adversary {

namespace {

qsim::PauliString two_qubit_op(int first, qsim::Axis a, int second, qsim::Axis b) {
  qsim::PauliString op = qsim::PauliString::parse("III");
  op.axes[first] = a;
  op.axes[second] = b;
  return op;
}

qsim::Axis setting(Bit b) { return qsim::MeasurementSetting{b}.axis(); }

bool deterministic(const qsim::StateVector& state, const qsim::PauliString& op) {
  const auto branches = qsim::measurement_branches(state, op);
  return branches[0].probability >= 1.0 - kCertaintyEpsilon ||
         branches[1].probability >= 1.0 - kCertaintyEpsilon;
}

std::vector<Bit> bits_of(std::uint32_t value, std::size_t width) {
  std::vector<Bit> out(width);
  for (std::size_t k = 0; k < width; ++k) out[k] = (value >> k) & 1;
  return out;
}

}  // namespace

PadInference pad_detection_attack(const qsim::StateVector& padded_state,
                                  const std::vector<int>& attacker_qubits, Rng& rng) {
  std::vector<int> qubits = attacker_qubits;
  std::sort(qubits.begin(), qubits.end());
  qubits.erase(std::unique(qubits.begin(), qubits.end()), qubits.end());
  const bool has_padded = std::find(qubits.begin(), qubits.end(), 2) != qubits.end();
  if (qubits.size() < 2 || !has_padded) {
    throw AttackUnavailableError(
        "pad detection needs the padded qubit and one more qubit in the same hands");
  }
  for (int q : qubits) {
    if (q < 0 || q >= padded_state.num_qubits()) {
      throw std::invalid_argument("attacker qubit out of range");
    }
  }
  const auto op = two_qubit_op(qubits[0], qsim::Axis::kY, 2, qsim::Axis::kY);
  auto result = qsim::measure_joint_pauli(padded_state, op, rng);
  // Unpadded, Y(x)Y on qubit 2 and a partner has eigenvalue -1.
  return {static_cast<Bit>(result.outcome ^ 1), std::move(result.state)};
}

PadInference single_qubit_pad_guess(const qsim::StateVector& padded_state, Rng& rng) {
  auto result = qsim::measure_pauli(padded_state, 2, qsim::Axis::kY, rng);
  return {result.outcome, std::move(result.state)};
}

nlohmann::json EprResult::to_json() const {
  nlohmann::json polls = nlohmann::json::array();
  for (const auto& p : polled_outputs) {
    polls.push_back({{"y", p.y}, {"value", p.value}, {"reliable", p.reliable}});
  }
  return {{"quantum_channel", quantum_channel},
          {"success", success},
          {"polled_outputs", polls},
          {"consistent_alice_inputs", consistent_alice_inputs}};
}

EprResult epr_attack(const boolfn::Decomposition& decomp, std::span<const Bit> x,
                     bool quantum_channel_allowed, Rng& rng) {
  const std::size_t nb = decomp.bob_arity();
  const std::vector<Bit> committed(nb, 0);
  const boolfn::Assignment base = decomp.assignment(x, committed);
  SamplingChance chance(rng);

  Bit alice_sum = 0;
  // parity[i][q] and whether it is fixed by the state, for Q_i = q.
  std::vector<std::array<Bit, 2>> parity(decomp.m());
  std::vector<std::array<bool, 2>> reliable(decomp.m());
  for (std::size_t i = 0; i < decomp.m(); ++i) {
    const Bit p = decomp.terms[i].p.eval(base);
    const Bit q_star = decomp.terms[i].q.eval(base);
    const Bit pa = rng.bit();
    const Bit pb = rng.bit();
    qsim::StateVector state = qsim::padded_ghz(pa, pb);
    auto alice = qsim::measure_pauli(state, 0, setting(p), chance);
    state = std::move(alice.state);
    alice_sum ^= alice.outcome;
    // Charlie's basis for Bob's value q is O_{k xor q}.
    const Bit k = p ^ pa ^ pb;
    if (quantum_channel_allowed) {
      for (Bit q : {Bit{0}, Bit{1}}) {
        const auto op = two_qubit_op(1, setting(q), 2, setting(k ^ q));
        reliable[i][q] = deterministic(state, op);
        auto joint = qsim::measure(state, op, chance);
        state = std::move(joint.state);
        parity[i][q] = joint.outcome;
      }
    } else {
      for (Bit q : {q_star, static_cast<Bit>(q_star ^ 1)}) {
        reliable[i][q] = deterministic(state, two_qubit_op(1, setting(q), 2, setting(k ^ q)));
        auto bob = qsim::measure_pauli(state, 1, setting(q), chance);
        auto charlie = qsim::measure_pauli(bob.state, 2, setting(k ^ q), chance);
        state = std::move(charlie.state);
        parity[i][q] = bob.outcome ^ charlie.outcome;
      }
    }
  }

  EprResult result;
  result.quantum_channel = quantum_channel_allowed;
  result.success = true;
  const std::uint32_t ny = 1u << nb;
  for (std::uint32_t yv = 0; yv < ny; ++yv) {
    PolledOutput poll;
    poll.y = bits_of(yv, nb);
    const boolfn::Assignment a = decomp.assignment(x, poll.y);
    poll.value = alice_sum;
    poll.reliable = true;
    for (std::size_t i = 0; i < decomp.m(); ++i) {
      const Bit q = decomp.terms[i].q.eval(a);
      poll.value ^= parity[i][q];
      poll.reliable = poll.reliable && reliable[i][q];
    }
    result.success = result.success && poll.reliable && poll.value == decomp.evaluate(a);
    result.polled_outputs.push_back(std::move(poll));
  }
  const std::size_t na = decomp.alice_arity();
  for (std::uint32_t xv = 0; xv < (1u << na); ++xv) {
    const auto candidate = bits_of(xv, na);
    bool ok = true;
    for (const auto& poll : result.polled_outputs) {
      if (poll.reliable && decomp.evaluate(decomp.assignment(candidate, poll.y)) != poll.value) {
        ok = false;
      }
    }
    if (ok) result.consistent_alice_inputs.push_back(candidate);
  }
  return result;
}

nlohmann::json DetectionReport::to_json() const {
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  return {{"cheat", cheat.str()},
          {"t_a", policy.t_a},
          {"t_b", policy.t_b},
          {"n_rep", policy.n_rep},
          {"trials", trials},
          {"detected", detected},
          {"detection_rate", detection_rate()},
          {"halted_step16", halted_step16},
          {"halted_step17", halted_step17},
          {"cap_hits", cap_hits},
          {"wrong_outputs", wrong_outputs},
          {"inconclusive", inconclusive},
          {"mean_detection_repetition", opt(mean_detection_repetition)},
          {"closed_form_value", opt(closed_form_value)},
          {"geometric_formula_value", opt(geometric_formula_value)},
          {"verdict", verdict}};
}

DetectionReport run_cheat_campaign(const boolfn::Decomposition& decomp, std::span<const Bit> x,
                                   std::span<const Bit> y, const protocol::TesterPolicy& policy,
                                   const protocol::CheatConfig& cheat, long trials, Rng& rng,
                                   protocol::Variant variant) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (!cheat.active()) throw std::invalid_argument("a campaign needs an active cheat");
  policy.validate();
  cheat.validate();
  const Bit truth = decomp.evaluate(decomp.assignment(x, y));

  DetectionReport report;
  report.cheat = cheat;
  report.policy = policy;
  report.trials = trials;
  double repetition_sum = 0.0;
  for (long t = 0; t < trials; ++t) {
    Rng trial_rng(rng.next_u64());
    const auto session = protocol::run_scheme_c(decomp, x, y, trial_rng, policy, cheat, variant);
    if (session.halt) {
      ++report.detected;
      repetition_sum += session.halt->repetition;
      if (session.halt->reason == "step 16") {
        ++report.halted_step16;
      } else {
        ++report.halted_step17;
      }
    } else {
      ++report.cap_hits;
      if (!session.output) {
        ++report.inconclusive;
      } else if (*session.output != truth) {
        ++report.wrong_outputs;
      }
    }
  }
  if (report.detected > 0) {
    report.mean_detection_repetition = repetition_sum / static_cast<double>(report.detected);
  }
  if (cheat.strategy == protocol::CheatStrategy::kFlipSum) {
    if (cheat.by == protocol::kCharlie) {
      report.geometric_formula_value = 1.0 / (1.0 - (1.0 - policy.t_a) * (1.0 - policy.t_b));
    } else {
      // The other party must test while the cheater does not.
      const double t_other = cheat.by == protocol::kBob ? policy.t_a : policy.t_b;
      const double t_self = cheat.by == protocol::kBob ? policy.t_b : policy.t_a;
      report.closed_form_value = (1.0 - t_self) / t_other;
      report.geometric_formula_value = 1.0 / (t_other * (1.0 - t_self));
    }
  }
  if (report.detected == report.trials) {
    report.verdict = "detected";
  } else if (report.detected == 0 && report.wrong_outputs == 0 && report.inconclusive == 0) {
    report.verdict = "harmless";
  } else {
    report.verdict = "mixed";
  }
  return report;
}

}  // namespace ghzmpc::adversary
