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

#include "ghzmpc/protocol.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace ghzmpc::protocol {
namespace {

boolfn::BooleanFunction load(const std::string& name) {
  return boolfn::load_function_file(std::string(GHZMPC_DATA_DIR) + "/" + name + ".json");
}

struct Inputs {
  std::vector<Bit> x, y;
  Bit f;
};

// Every assignment with the expected output straight from the truth table.
std::vector<Inputs> grid(const boolfn::BooleanFunction& f) {
  std::vector<Inputs> out;
  for (boolfn::Assignment a = 0; a < f.truth_table().size(); ++a) {
    out.push_back({f.party_bits(a, 0), f.party_bits(a, 1), f.eval(a)});
  }
  return out;
}

SchemeConfig config_of(Scheme scheme, Variant variant = Variant::kQubitSwap) {
  SchemeConfig c;
  c.scheme = scheme;
  c.variant = variant;
  return c;
}

const boolfn::Decomposition& and_decomp() {
  static const auto d = boolfn::inner_product_decomposition(load("and"));
  return d;
}

TEST(Correctness, AllTwoPartySchemesOnSmallFunctions) {
  for (const char* name : {"and", "xor", "eq2", "maj3"}) {
    const auto f = load(name);
    const auto d = boolfn::inner_product_decomposition(f);
    for (const auto& in : grid(f)) {
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        for (Variant v : {Variant::kQubitSwap, Variant::kEnsemble}) {
          Rng r1(seed), r2(seed), r3(seed);
          EXPECT_EQ(run_scheme_b(d, in.x, in.y, r1, v).output, in.f) << name;
          EXPECT_EQ(run_scheme_b_one_sided(d, in.x, in.y, r2, v).output, in.f) << name;
          const auto c = run_scheme_c(d, in.x, in.y, r3, TesterPolicy{}, CheatConfig::none(), v);
          EXPECT_FALSE(c.halted()) << name;
          EXPECT_EQ(c.output, in.f) << name;
        }
        Rng ra(seed);
        EXPECT_EQ(run_scheme_a(d, in.x, in.y, ra).output, in.f) << name;
      }
    }
  }
}

TEST(Correctness, RejectsArityMismatchAndMisplacedCheat) {
  Rng rng(1);
  const std::vector<Bit> x = {1, 1}, y = {1};
  EXPECT_THROW(run_scheme_a(and_decomp(), x, y, rng), std::invalid_argument);
  SchemeConfig c = config_of(Scheme::kB);
  c.cheat = CheatConfig::flip_sum(kAlice);
  SamplingChance chance(rng);
  const std::vector<Bit> one = {1};
  EXPECT_THROW(run_session(c, and_decomp(), one, one, chance), std::invalid_argument);
}

TEST(Determinism, SameSeedSameTranscript) {
  const auto d = boolfn::inner_product_decomposition(load("eq2"));
  const std::vector<Bit> x = {1, 0}, y = {1, 1};
  Rng a(99), b(99), c(100);
  const auto ta = run_scheme_c(d, x, y, a, TesterPolicy{}, CheatConfig::none()).transcript;
  const auto tb = run_scheme_c(d, x, y, b, TesterPolicy{}, CheatConfig::none()).transcript;
  const auto tc = run_scheme_c(d, x, y, c, TesterPolicy{}, CheatConfig::none()).transcript;
  EXPECT_EQ(ta.to_jsonl(), tb.to_jsonl());
  EXPECT_NE(ta.to_jsonl(), tc.to_jsonl());
}

TEST(Transcript, JsonLinesCarryAllFields) {
  Rng rng(4);
  const std::vector<Bit> one = {1};
  const auto r = run_scheme_b(and_decomp(), one, one, rng, Variant::kQubitSwap);
  std::istringstream lines(r.transcript.to_jsonl());
  std::string line;
  std::uint64_t expected_seq = 0;
  int handovers = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    for (const char* k : {"seq", "from", "to", "channel", "payload", "step_label", "term",
                          "repetition"}) {
      EXPECT_TRUE(j.contains(k)) << k;
    }
    EXPECT_GE(j["seq"].get<std::uint64_t>(), expected_seq);
    expected_seq = j["seq"].get<std::uint64_t>();
    if (j["channel"] == std::string(channel_name(Channel::kQubitHandover))) {
      ++handovers;
      EXPECT_EQ(j["payload"].get<std::string>().rfind("qubit:", 0), 0u);
    }
  }
  EXPECT_EQ(handovers, 9);  // three rotations of three qubits
  EXPECT_EQ(r.transcript.messages.back().step, "B.13");
  EXPECT_EQ(r.transcript.party_name(kEveryone), "*");
}

// Replays the handovers of each term: after every rotation each party holds
// exactly one of the term's qubits.
TEST(QubitSwap, NoPartyEverHoldsTwoQubits) {
  const auto d = boolfn::inner_product_decomposition(load("eq2"));
  const std::vector<Bit> x = {1, 1}, y = {0, 1};
  Rng rng(6);
  const auto r = run_scheme_c(d, x, y, rng, TesterPolicy{0.25, 0.25, 3}, CheatConfig::none());
  std::map<std::tuple<int, int>, std::array<int, 3>> holder;
  int checked = 0;
  const auto& msgs = r.transcript.messages;
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    const Message& m = msgs[i];
    if (m.channel != Channel::kQubitHandover) continue;
    auto [it, fresh] = holder.try_emplace({m.term, m.repetition}, std::array<int, 3>{0, 1, 2});
    ASSERT_EQ(it->second[m.qubit], m.from.index);
    it->second[m.qubit] = m.to.index;
    const bool last = i + 1 == msgs.size() || msgs[i + 1].channel != Channel::kQubitHandover ||
                      msgs[i + 1].step != m.step || msgs[i + 1].term != m.term;
    if (last) {
      std::array<int, 3> count{};
      for (int h : it->second) ++count[h];
      EXPECT_EQ(count, (std::array<int, 3>{1, 1, 1}));
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Views, ContainOnlyWhatThePartyReceives) {
  const auto d = boolfn::inner_product_decomposition(load("maj3"));
  const std::vector<Bit> x = {1, 0}, y = {1};
  Rng rng(8);
  const auto r = run_scheme_b_one_sided(d, x, y, rng);
  for (PartyId p : {kAlice, kBob, kCharlie}) {
    const PartyView v = r.view(p);
    for (const Message& m : v.received) {
      EXPECT_TRUE(m.to == p || m.channel == Channel::kBroadcast);
    }
    for (const auto& b : v.local_randomness) EXPECT_EQ(b.owner, p);
  }
  EXPECT_FALSE(r.view(kAlice).output.has_value());
  EXPECT_FALSE(r.view(kCharlie).output.has_value());
  EXPECT_EQ(r.view(kBob).output, Bit{1});
  const std::vector<PartyId> both = {kCharlie, kBob, kCharlie};
  const PartyView joint = r.view(both);
  EXPECT_EQ(joint.members, (std::vector<PartyId>{kBob, kCharlie}));
  EXPECT_EQ(joint.received.size(), r.view(kBob).received.size() + r.view(kCharlie).received.size());
}

TEST(SchemeA, CharlieLearnsEveryTermParity) {
  const auto f = load("eq2");
  const auto d = boolfn::inner_product_decomposition(f);
  for (const auto& in : grid(f)) {
    Rng rng(3);
    const auto r = run_scheme_a(d, in.x, in.y, rng);
    const auto a = d.assignment(in.x, in.y);
    std::map<int, Bit> parity;
    for (const Message& m : r.view(kCharlie).received) {
      if (m.step == "A.4" || m.step == "A.5") parity[m.term] ^= m.bit;
    }
    ASSERT_EQ(parity.size(), d.m());
    for (std::size_t i = 0; i < d.m(); ++i) {
      EXPECT_EQ(parity[static_cast<int>(i) + 1], d.terms[i].p.eval(a) ^ d.terms[i].q.eval(a));
    }
  }
}

TEST(SchemeB, CharlieTermPhaseViewIsInputIndependent) {
  for (Variant v : {Variant::kQubitSwap, Variant::kEnsemble}) {
    const SchemeConfig c = config_of(Scheme::kB, v);
    std::vector<ViewDistribution> dists;
    for (const auto& in : grid(load("and"))) {
      const auto views = enumerate_views(c, and_decomp(), in.x, in.y);
      ViewDistribution phase;
      for (const auto& [key, mass] : views.at(kCharlie).entries()) {
        phase.add(mass.view.term_phase(), mass.probability);
      }
      EXPECT_NEAR(phase.total(), 1.0, 1e-12);
      dists.push_back(phase);
    }
    for (const auto& d : dists) EXPECT_LT(total_variation(dists[0], d), 1e-9);
  }
}

TEST(SchemeB, CharlieFullViewDependsOnlyOnOutput) {
  const auto f = load("maj3");
  const auto d = boolfn::inner_product_decomposition(f);
  const SchemeConfig c = config_of(Scheme::kB);
  std::map<Bit, ViewDistribution> by_output;
  for (const auto& in : grid(f)) {
    const auto views = enumerate_views(c, d, in.x, in.y);
    auto [it, fresh] = by_output.try_emplace(in.f, views.at(kCharlie));
    if (!fresh) {
      EXPECT_LT(total_variation(it->second, views.at(kCharlie)), 1e-9);
    }
  }
  EXPECT_GT(total_variation(by_output[0], by_output[1]), 0.5);
}

TEST(Variants, QubitSwapAndEnsembleGiveIdenticalViews) {
  const auto f = load("maj3");
  const auto d = boolfn::inner_product_decomposition(f);
  for (Scheme s : {Scheme::kB, Scheme::kBOneSided}) {
    for (const auto& in : grid(f)) {
      const auto a = enumerate_views(config_of(s, Variant::kQubitSwap), d, in.x, in.y);
      const auto b = enumerate_views(config_of(s, Variant::kEnsemble), d, in.x, in.y);
      for (PartyId p : {kAlice, kBob, kCharlie}) {
        EXPECT_LT(total_variation(a.at(p), b.at(p)), 1e-9);
      }
    }
  }
}

TEST(Enumeration, ProbabilitiesSumToOneAndBoundIsEnforced) {
  const auto d = boolfn::inner_product_decomposition(load("eq2"));
  const std::vector<Bit> x = {0, 1}, y = {0, 1};
  double total = 0.0;
  for_each_branch(config_of(Scheme::kA), d, x, y,
                  [&](double p, const SessionResult& r) {
                    total += p;
                    EXPECT_EQ(r.output, Bit{1});
                  });
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_EQ(branch_bound_log2(config_of(Scheme::kA), d), 12);
  EXPECT_EQ(branch_bound_log2(config_of(Scheme::kB), d), 16);
  SchemeConfig c = config_of(Scheme::kC);
  c.policy.n_rep = 20;
  EXPECT_GT(branch_bound_log2(c, d), kMaxBranchLog2);
  EXPECT_THROW(enumerate_views(c, d, x, y), EnumerationLimitError);
}

// P(a repetition has no tester) = (1 - t_a)(1 - t_b); without any such
// repetition the run is inconclusive, otherwise it must return f.
TEST(SchemeC, HonestRunsNeverHaltOverAllTesterCoins) {
  const auto f = load("and");
  TesterPolicy policy{0.25, 0.4, 6};
  SchemeConfig c = config_of(Scheme::kC);
  c.policy = policy;
  BranchOptions options;
  options.enumerate_kind = [](ChoiceKind k) { return k == ChoiceKind::kTester; };
  options.sample_seed = 17;
  const double none = (1 - policy.t_a) * (1 - policy.t_b);
  for (const auto& in : grid(f)) {
    double inconclusive = 0.0, total = 0.0;
    for_each_branch(c, and_decomp(), in.x, in.y,
                    [&](double p, const SessionResult& r) {
                      total += p;
                      ASSERT_FALSE(r.halted());
                      if (r.output) {
                        EXPECT_EQ(*r.output, in.f);
                      } else {
                        inconclusive += p;
                      }
                    },
                    options);
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NEAR(inconclusive, std::pow(1 - none, policy.n_rep), 1e-12);
  }
}

TEST(SchemeC, RepetitionRecordsMatchAnnouncements) {
  Rng rng(12);
  const std::vector<Bit> one = {1};
  const auto r = run_scheme_c(and_decomp(), one, one, rng, TesterPolicy{0.3, 0.3, 15},
                              CheatConfig::none());
  ASSERT_EQ(r.repetitions.size(), 15u);
  for (const auto& rep : r.repetitions) {
    EXPECT_EQ(rep.alice_tested, rep.alice_claimed);
    EXPECT_EQ(rep.value, (rep.alice_tested || rep.bob_tested) ? 0 : 1);
  }
}

TEST(Config, TesterPolicyAndCheatParsing) {
  EXPECT_NO_THROW(TesterPolicy{}.validate());
  EXPECT_THROW((TesterPolicy{0.0, 0.2, 5}.validate()), std::invalid_argument);
  EXPECT_THROW((TesterPolicy{0.2, 0.5, 5}.validate()), std::invalid_argument);
  EXPECT_THROW((TesterPolicy{0.2, 0.2, 0}.validate()), std::invalid_argument);
  EXPECT_EQ(CheatConfig::parse("none").strategy, CheatStrategy::kNone);
  const auto t = CheatConfig::parse("testerlie:bob:falseclaim");
  EXPECT_TRUE(t.is(CheatStrategy::kTesterLie, kBob));
  EXPECT_EQ(t.mode, TesterLieMode::kFalseClaim);
  EXPECT_EQ(CheatConfig::parse(t.str()).str(), t.str());
  EXPECT_TRUE(CheatConfig::parse("flipsum:charlie").is(CheatStrategy::kFlipSum, kCharlie));
  EXPECT_THROW(CheatConfig::parse("fakepad:charlie").validate(), std::invalid_argument);
  EXPECT_THROW(CheatConfig::parse("bogus"), std::invalid_argument);
}

TEST(Multiparty, NominatedThirdIsLowestOutsider) {
  EXPECT_EQ(nominate_third(1, 0, 3), PartyId{2});
  EXPECT_EQ(nominate_third(2, 1, 3), PartyId{0});
  EXPECT_EQ(nominate_third(3, 0, 4), PartyId{1});
}

TEST(Multiparty, CorrectOnExhaustiveGrids) {
  for (const auto& [name, n] : std::vector<std::pair<std::string, int>>{
           {"pairwise3", 3}, {"pairwise4", 4}, {"local3", 3}}) {
    const auto f = load(name);
    const auto form = boolfn::degree2_decomposition(f, n);
    for (InnerScheme inner : {InnerScheme::kB, InnerScheme::kC}) {
      for (Variant v : {Variant::kQubitSwap, Variant::kEnsemble}) {
        MultipartyConfig config;
        config.inner = inner;
        config.variant = v;
        config.policy = TesterPolicy{0.2, 0.2, 12};
        for (boolfn::Assignment a = 0; a < f.truth_table().size(); ++a) {
          for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            Rng rng(seed);
            SamplingChance chance(rng);
            const auto r = run_multiparty(form, a, chance, config);
            ASSERT_FALSE(r.halted()) << name;
            if (!r.output) continue;  // every repetition had a tester
            EXPECT_EQ(*r.output, f.eval(a)) << name << " a=" << a;
            for (int j = 0; j < n; ++j) EXPECT_EQ(r.records[j].output, f.eval(a));
          }
        }
      }
    }
  }
}

TEST(Multiparty, VectorInputsMatchAssignment) {
  const auto f = load("pairwise4");
  const auto form = boolfn::degree2_decomposition(f, 4);
  const std::vector<std::vector<Bit>> inputs = {{1}, {1}, {0}, {1}};
  Rng rng(5);
  EXPECT_EQ(run_multiparty(form, inputs, rng).output, f.eval(0b1011));
  EXPECT_EQ(run_multiparty(form, inputs, rng).transcript.roster.size(), 4u);
}

}  // namespace
}  // namespace ghzmpc::protocol
