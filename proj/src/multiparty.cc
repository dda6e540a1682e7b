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

#include <stdexcept>

#include "ghzmpc/protocol.h"
#include "session.h"

namespace ghzmpc::protocol {

PartyId nominate_third(int j1, int j2, int num_parties) {
  if (j1 == j2) throw std::invalid_argument("a pair needs two distinct parties");
  for (int j = 0; j < num_parties; ++j) {
    if (j != j1 && j != j2) return PartyId{j};
  }
  throw std::invalid_argument("no third party available");
}

namespace internal {

std::vector<std::string> multiparty_roster(const boolfn::Degree2Form& form) {
  std::vector<std::string> roster;
  for (const auto& p : form.parties) roster.push_back(p.name);
  return roster;
}

std::vector<MultipartyTerm> multiparty_terms(const boolfn::Degree2Form& form) {
  std::vector<MultipartyTerm> out;
  const int n = form.num_parties();
  for (const auto& [pair, terms] : form.buckets) {
    const auto [high, low] = pair;
    if (high <= low || low < 0 || high >= n) {
      throw std::invalid_argument("malformed pair bucket");
    }
    const TermRoles roles{PartyId{low}, PartyId{high}, nominate_third(high, low, n)};
    for (const auto& t : terms) out.push_back({pair, &t, roles});
  }
  return out;
}

}  // namespace internal

namespace {

using internal::MultipartyTerm;
using internal::PaddedTermOptions;
using internal::Session;
using internal::StepLabels;

void check_form(const boolfn::Degree2Form& form) {
  if (form.num_parties() < 3) throw std::invalid_argument("at least 3 parties required");
  if (form.party_masks.size() != form.parties.size()) {
    throw std::invalid_argument("degree-2 form does not match its party layout");
  }
}

std::vector<Bit> bits_of(boolfn::Assignment a, boolfn::Assignment mask) {
  std::vector<Bit> out;
  for (int k = 0; k < 32; ++k) {
    if (mask & (boolfn::Assignment{1} << k)) out.push_back((a >> k) & 1);
  }
  return out;
}

// Runs every term once and returns per-party parities of retained bits.
std::vector<Bit> run_terms(Session& session, const std::vector<MultipartyTerm>& terms,
                           boolfn::Assignment inputs, const std::vector<Bit>& tested,
                           Variant variant, StepLabels labels, int repetition) {
  std::vector<Bit> parity(session.num_parties(), 0);
  PaddedTermOptions options;
  options.variant = variant;
  options.labels = labels;
  options.repetition = repetition;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& mt = terms[k];
    options.term = static_cast<int>(k) + 1;
    const Bit p = tested[mt.roles.alice.index] ? 0 : mt.term->low.eval(inputs);
    const Bit q = tested[mt.roles.bob.index] ? 0 : mt.term->high.eval(inputs);
    const auto m = internal::run_padded_term(session, mt.roles, p, q, options);
    parity[mt.roles.alice.index] ^= m.alice;
    parity[mt.roles.bob.index] ^= m.bob;
    parity[mt.roles.charlie.index] ^= m.charlie;
  }
  return parity;
}

}  // namespace

SessionResult run_multiparty(const boolfn::Degree2Form& form, boolfn::Assignment inputs,
                             Chance& chance, const MultipartyConfig& config) {
  check_form(form);
  const int n = form.num_parties();
  Session session(internal::multiparty_roster(form), chance);
  for (int j = 0; j < n; ++j) session.set_inputs(PartyId{j}, bits_of(inputs, form.party_masks[j]));
  const auto terms = internal::multiparty_terms(form);

  if (config.inner == InnerScheme::kB) {
    const std::vector<Bit> none(n, 0);
    const auto parity = run_terms(session, terms, inputs, none, config.variant, {"B", 0}, 0);
    Bit f = 0;
    for (int j = 0; j < n; ++j) {
      session.broadcast(PartyId{j}, parity[j], "M.4", 0, 0);
      f ^= parity[j];
    }
    for (int j = 0; j < n; ++j) session.record(PartyId{j}).output = f;
    return session.finish(f, std::nullopt);
  }

  config.policy.validate();
  std::vector<RepetitionRecord> reps;
  std::optional<Bit> reference;
  for (int rep = 1; rep <= config.policy.n_rep; ++rep) {
    std::vector<Bit> tested(n, 0);
    bool any = false;
    for (int j = 0; j < n; ++j) {
      tested[j] = session.draw(PartyId{j}, ChoiceKind::kTester, config.policy.t_a, "tester", 0,
                               rep);
      any = any || tested[j];
    }
    const auto parity = run_terms(session, terms, inputs, tested, config.variant, {"C", 2}, rep);
    Bit f = 0;
    for (int j = 0; j < n; ++j) {
      session.broadcast(PartyId{j}, parity[j], "M.4", 0, rep);
      f ^= parity[j];
    }
    for (int j = 0; j < n; ++j) session.broadcast(PartyId{j}, tested[j], "M.4/tester", 0, rep);
    bool covered = true;
    for (const auto& mt : terms) {
      covered = covered && (tested[mt.roles.alice.index] || tested[mt.roles.bob.index]);
    }
    RepetitionRecord rec;
    rec.index = rep;
    rec.value = f;
    reps.push_back(rec);
    if (any && covered && f != 0) {
      return session.finish(std::nullopt, Halt{rep, "step 16"}, std::move(reps));
    }
    if (!any) {
      if (!reference) {
        reference = f;
      } else if (*reference != f) {
        return session.finish(std::nullopt, Halt{rep, "step 17"}, std::move(reps));
      }
    }
  }
  if (reference) {
    for (int j = 0; j < n; ++j) session.record(PartyId{j}).output = *reference;
  }
  return session.finish(reference, std::nullopt, std::move(reps));
}

SessionResult run_multiparty(const boolfn::Degree2Form& form,
                             const std::vector<std::vector<Bit>>& inputs, Rng& rng,
                             const MultipartyConfig& config) {
  check_form(form);
  if (inputs.size() != form.parties.size()) {
    throw std::invalid_argument("one input vector per party required");
  }
  boolfn::Assignment a = 0;
  int k = 0;
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    if (inputs[j].size() != form.parties[j].variables.size()) {
      throw std::invalid_argument("party " + form.parties[j].name + " expects " +
                                  std::to_string(form.parties[j].variables.size()) + " bits");
    }
    for (Bit b : inputs[j]) a |= boolfn::Assignment{static_cast<boolfn::Assignment>(b & 1)} << k++;
  }
  SamplingChance chance(rng);
  return run_multiparty(form, a, chance, config);
}

}  // namespace ghzmpc::protocol
