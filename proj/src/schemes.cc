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
#include <stdexcept>

#include "ghzmpc/protocol.h"
#include "ghzmpc/qsim.h"
#include "session.h"

namespace ghzmpc::protocol {

namespace internal {

namespace {

// Pads read off the ensemble purification are pad randomness, whatever
// mechanism produced them.
class PadChance final : public Chance {
 public:
  explicit PadChance(Chance& inner) : inner_(inner) {}
  Bit draw(ChoiceKind, double p_one) override { return inner_.draw(ChoiceKind::kPad, p_one); }

 private:
  Chance& inner_;
};

bool contains(const std::vector<PartyId>& set, PartyId p) {
  return std::find(set.begin(), set.end(), p) != set.end();
}

}  // namespace

TermMeasurements run_padded_term(Session& session, const TermRoles& roles, Bit p, Bit q,
                                 const PaddedTermOptions& options) {
  const StepLabels& step = options.labels;
  const int t = options.term;
  const int r = options.repetition;
  const std::array<PartyId, 3> holders{roles.alice, roles.bob, roles.charlie};

  Bit pa = 0;
  Bit pb = 0;
  std::optional<GhzRegister> reg;
  if (options.variant == Variant::kQubitSwap) {
    pa = session.draw(roles.alice, ChoiceKind::kPad, 0.5, "p_a", t, r);
    pb = session.draw(roles.bob, ChoiceKind::kPad, 0.5, "p_b", t, r);
    reg.emplace(qsim::prepare_ghz(), holders);
    reg->rotate(session, {roles.charlie, roles.alice, roles.bob}, step(4), t, r);
    if (pa) reg->hadamard(roles.alice, 2);
    reg->rotate(session, {roles.alice, roles.bob, roles.charlie}, step(6), t, r);
    if (pb) reg->hadamard(roles.bob, 2);
    reg->rotate(session, {roles.alice, roles.bob, roles.charlie}, step(8), t, r);
  } else {
    PadChance pad_chance(session.chance());
    auto ensemble = qsim::prepare_padded_ensemble(pad_chance);
    pa = ensemble.p_a;
    pb = ensemble.p_b;
    session.note_randomness(roles.alice, "p_a", t, r, pa);
    session.note_randomness(roles.bob, "p_b", t, r, pb);
    reg.emplace(std::move(ensemble.state), holders);
  }

  if (!options.quantum_coalition.empty()) {
    std::vector<int> pooled;
    for (int qubit = 2; qubit >= 0; --qubit) {
      if (contains(options.quantum_coalition, reg->holder(qubit))) pooled.push_back(qubit);
    }
    if (pooled.size() >= 2) {
      const int first = std::min(pooled[0], pooled[1]);
      const int second = std::max(pooled[0], pooled[1]);
      const Bit probe = reg->probe_yy(session, first, second);
      session.note_measurement(reg->holder(pooled[0]), "probe", t, r, probe);
    }
  }

  const Bit sent_a = p ^ pa ^ options.alice_fakes_pad;
  const Bit sent_b = q ^ pb ^ options.bob_fakes_pad;
  session.send(roles.alice, roles.charlie, sent_a, step(10), t, r);
  session.send(roles.bob, roles.charlie, sent_b, step(10), t, r);

  const char* label = options.measurement_label;
  TermMeasurements out;
  out.alice = reg->measure(session, roles.alice, qsim::MeasurementSetting{p}.axis());
  session.note_measurement(roles.alice, label, t, r, out.alice);
  out.bob = reg->measure(session, roles.bob, qsim::MeasurementSetting{q}.axis());
  session.note_measurement(roles.bob, label, t, r, out.bob);
  const Bit c = sent_a ^ sent_b;
  out.charlie = reg->measure(session, roles.charlie, qsim::MeasurementSetting{c}.axis());
  session.note_measurement(roles.charlie, label, t, r, out.charlie);
  return out;
}

}  // namespace internal

namespace {

using internal::GhzRegister;
using internal::PaddedTermOptions;
using internal::Session;
using internal::StepLabels;
using internal::TermMeasurements;
using internal::TermRoles;

const std::vector<std::string> kRoster{"Alice", "Bob", "Charlie"};
constexpr TermRoles kTriple{kAlice, kBob, kCharlie};

struct TermBits {
  std::vector<Bit> p;
  std::vector<Bit> q;
};

TermBits evaluate_terms(const boolfn::Decomposition& decomp, boolfn::Assignment a) {
  TermBits out;
  for (const auto& t : decomp.terms) {
    out.p.push_back(t.p.eval(a));
    out.q.push_back(t.q.eval(a));
  }
  return out;
}

Session open_session(const boolfn::Decomposition& decomp, std::span<const Bit> x,
                     std::span<const Bit> y, Chance& chance, boolfn::Assignment& assignment) {
  assignment = decomp.assignment(x, y);
  Session session(kRoster, chance);
  session.set_inputs(kAlice, {x.begin(), x.end()});
  session.set_inputs(kBob, {y.begin(), y.end()});
  return session;
}

void set_all_outputs(Session& session, Bit value) {
  for (int i = 0; i < session.num_parties(); ++i) session.record(PartyId{i}).output = value;
}

SessionResult scheme_a(const boolfn::Decomposition& decomp, std::span<const Bit> x,
                       std::span<const Bit> y, Chance& chance) {
  boolfn::Assignment a = 0;
  Session session = open_session(decomp, x, y, chance, a);
  const TermBits bits = evaluate_terms(decomp, a);
  Bit sum_a = 0, sum_b = 0, sum_c = 0;
  for (std::size_t i = 0; i < decomp.m(); ++i) {
    const int t = static_cast<int>(i) + 1;
    const Bit p = bits.p[i];
    const Bit q = bits.q[i];
    const Bit r = session.draw(kAlice, ChoiceKind::kSharedBit, 0.5, "r", t, 0);
    session.note_randomness(kBob, "r", t, 0, r);
    session.send(kAlice, kCharlie, p ^ r, "A.4", t, 0);
    session.send(kBob, kCharlie, q ^ r, "A.5", t, 0);
    const Bit parity = (p ^ r) ^ (q ^ r);
    GhzRegister reg(qsim::prepare_ghz(), {kAlice, kBob, kCharlie});
    const Bit ma = reg.measure(session, kAlice, qsim::MeasurementSetting{p}.axis());
    session.note_measurement(kAlice, "M", t, 0, ma);
    const Bit mb = reg.measure(session, kBob, qsim::MeasurementSetting{q}.axis());
    session.note_measurement(kBob, "M", t, 0, mb);
    const Bit mc = reg.measure(session, kCharlie, qsim::MeasurementSetting{parity}.axis());
    session.note_measurement(kCharlie, "M", t, 0, mc);
    sum_a ^= ma;
    sum_b ^= mb;
    sum_c ^= mc;
  }
  session.send(kAlice, kCharlie, sum_a, "A.8", 0, 0);
  session.send(kBob, kCharlie, sum_b, "A.8", 0, 0);
  const Bit f = sum_a ^ sum_b ^ sum_c;
  session.broadcast(kCharlie, f, "A.9", 0, 0);
  set_all_outputs(session, f);
  return session.finish(f, std::nullopt);
}

TermMeasurements padded_terms(Session& session, const TermBits& bits,
                              PaddedTermOptions options) {
  TermMeasurements sums;
  for (std::size_t i = 0; i < bits.p.size(); ++i) {
    options.term = static_cast<int>(i) + 1;
    const auto m = internal::run_padded_term(session, kTriple, bits.p[i], bits.q[i], options);
    sums.alice ^= m.alice;
    sums.bob ^= m.bob;
    sums.charlie ^= m.charlie;
  }
  return sums;
}

SessionResult scheme_b(const SchemeConfig& config, const boolfn::Decomposition& decomp,
                       std::span<const Bit> x, std::span<const Bit> y, Chance& chance) {
  boolfn::Assignment a = 0;
  Session session = open_session(decomp, x, y, chance, a);
  PaddedTermOptions options;
  options.variant = config.variant;
  options.quantum_coalition = config.quantum_coalition;
  const auto sums = padded_terms(session, evaluate_terms(decomp, a), options);
  session.send(kAlice, kCharlie, sums.alice, "B.12", 0, 0);
  session.send(kBob, kCharlie, sums.bob, "B.12", 0, 0);
  const Bit f = sums.alice ^ sums.bob ^ sums.charlie;
  session.broadcast(kCharlie, f, "B.13", 0, 0);
  set_all_outputs(session, f);
  return session.finish(f, std::nullopt);
}

SessionResult scheme_b_one_sided(const SchemeConfig& config,
                                 const boolfn::Decomposition& decomp, std::span<const Bit> x,
                                 std::span<const Bit> y, Chance& chance) {
  boolfn::Assignment a = 0;
  Session session = open_session(decomp, x, y, chance, a);
  PaddedTermOptions options;
  options.variant = config.variant;
  options.quantum_coalition = config.quantum_coalition;
  const auto sums = padded_terms(session, evaluate_terms(decomp, a), options);
  session.send(kAlice, kCharlie, sums.alice, "B1.11", 0, 0);
  const Bit relay = sums.alice ^ sums.charlie;
  session.send(kCharlie, kBob, relay, "B1.12", 0, 0);
  const Bit f = relay ^ sums.bob;
  session.record(kBob).output = f;
  return session.finish(f, std::nullopt);
}

SessionResult scheme_c(const SchemeConfig& config, const boolfn::Decomposition& decomp,
                       std::span<const Bit> x, std::span<const Bit> y, Chance& chance) {
  const TesterPolicy& policy = config.policy;
  const CheatConfig& cheat = config.cheat;
  policy.validate();
  cheat.validate();
  boolfn::Assignment a = 0;
  Session session = open_session(decomp, x, y, chance, a);
  const TermBits honest = evaluate_terms(decomp, a);
  const StepLabels step{"C", 0};

  std::vector<RepetitionRecord> reps;
  std::optional<Bit> reference;
  for (int j = 1; j <= policy.n_rep; ++j) {
    RepetitionRecord rec;
    rec.index = j;
    const Bit coin_a = session.draw(kAlice, ChoiceKind::kTester, policy.t_a, "tester", 0, j);
    const Bit coin_b = session.draw(kBob, ChoiceKind::kTester, policy.t_b, "tester", 0, j);
    rec.alice_tested = rec.alice_claimed = coin_a;
    rec.bob_tested = rec.bob_claimed = coin_b;
    if (cheat.strategy == CheatStrategy::kTesterLie) {
      Bit& tested = cheat.by == kAlice ? rec.alice_tested : rec.bob_tested;
      Bit& claimed = cheat.by == kAlice ? rec.alice_claimed : rec.bob_claimed;
      if (cheat.mode == TesterLieMode::kSilentTester) {
        claimed = 0;
      } else {
        tested = 0;
      }
    }

    TermBits bits = honest;
    if (rec.alice_tested) std::fill(bits.p.begin(), bits.p.end(), Bit{0});
    if (rec.bob_tested) std::fill(bits.q.begin(), bits.q.end(), Bit{0});

    PaddedTermOptions options;
    options.variant = config.variant;
    options.labels = StepLabels{"C", 2};
    options.repetition = j;
    options.alice_fakes_pad = cheat.is(CheatStrategy::kFakePad, kAlice) ? 1 : 0;
    options.bob_fakes_pad = cheat.is(CheatStrategy::kFakePad, kBob) ? 1 : 0;
    options.quantum_coalition = config.quantum_coalition;
    TermMeasurements sums = padded_terms(session, bits, options);

    // Commit round: every announcement is fixed before any is revealed.
    if (cheat.strategy == CheatStrategy::kFlipSum) {
      if (cheat.by == kAlice && !rec.alice_tested) sums.alice ^= 1;
      if (cheat.by == kBob && !rec.bob_tested) sums.bob ^= 1;
      if (cheat.by == kCharlie) sums.charlie ^= 1;
    }
    session.broadcast(kAlice, sums.alice, step(14), 0, j);
    session.broadcast(kBob, sums.bob, step(14), 0, j);
    session.broadcast(kCharlie, sums.charlie, step(14), 0, j);
    session.broadcast(kAlice, rec.alice_claimed, step(14) + "/tester", 0, j);
    session.broadcast(kBob, rec.bob_claimed, step(14) + "/tester", 0, j);

    rec.value = sums.alice ^ sums.bob ^ sums.charlie;
    reps.push_back(rec);
    const bool any_claim = rec.alice_claimed || rec.bob_claimed;
    if (any_claim && rec.value != 0) {
      return session.finish(std::nullopt, Halt{j, "step 16"}, std::move(reps));
    }
    if (!any_claim) {
      if (!reference) {
        reference = rec.value;
      } else if (*reference != rec.value) {
        return session.finish(std::nullopt, Halt{j, "step 17"}, std::move(reps));
      }
    }
  }
  if (reference) set_all_outputs(session, *reference);
  return session.finish(reference, std::nullopt, std::move(reps));
}

}  // namespace

SessionResult run_session(const SchemeConfig& config, const boolfn::Decomposition& decomp,
                          std::span<const Bit> x, std::span<const Bit> y, Chance& chance) {
  if (config.scheme != Scheme::kC && config.cheat.active()) {
    throw std::invalid_argument("cheat strategies apply to Scheme C only");
  }
  switch (config.scheme) {
    case Scheme::kA: return scheme_a(decomp, x, y, chance);
    case Scheme::kB: return scheme_b(config, decomp, x, y, chance);
    case Scheme::kBOneSided: return scheme_b_one_sided(config, decomp, x, y, chance);
    case Scheme::kC: return scheme_c(config, decomp, x, y, chance);
  }
  throw std::invalid_argument("unknown scheme");
}

SessionResult run_scheme_a(const boolfn::Decomposition& decomp, std::span<const Bit> x,
                           std::span<const Bit> y, Rng& rng) {
  SamplingChance chance(rng);
  SchemeConfig config;
  config.scheme = Scheme::kA;
  return run_session(config, decomp, x, y, chance);
}

SessionResult run_scheme_b(const boolfn::Decomposition& decomp, std::span<const Bit> x,
                           std::span<const Bit> y, Rng& rng, Variant variant) {
  SamplingChance chance(rng);
  SchemeConfig config;
  config.scheme = Scheme::kB;
  config.variant = variant;
  return run_session(config, decomp, x, y, chance);
}

SessionResult run_scheme_b_one_sided(const boolfn::Decomposition& decomp,
                                     std::span<const Bit> x, std::span<const Bit> y,
                                     Rng& rng, Variant variant) {
  SamplingChance chance(rng);
  SchemeConfig config;
  config.scheme = Scheme::kBOneSided;
  config.variant = variant;
  return run_session(config, decomp, x, y, chance);
}

SessionResult run_scheme_c(const boolfn::Decomposition& decomp, std::span<const Bit> x,
                           std::span<const Bit> y, Rng& rng, const TesterPolicy& policy,
                           const CheatConfig& cheat, Variant variant) {
  SamplingChance chance(rng);
  SchemeConfig config;
  config.scheme = Scheme::kC;
  config.variant = variant;
  config.policy = policy;
  config.cheat = cheat;
  return run_session(config, decomp, x, y, chance);
}

}  // namespace ghzmpc::protocol
