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

#include <cmath>
#include <set>

#include "ghzmpc/protocol.h"

namespace ghzmpc::protocol {

void ViewDistribution::add(const PartyView& view, double probability) {
  std::string key = view.key();
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(std::move(key), ViewMass{probability, view});
  } else {
    it->second.probability += probability;
  }
}

double ViewDistribution::total() const {
  double sum = 0.0;
  for (const auto& [key, mass] : entries_) sum += mass.probability;
  return sum;
}

double ViewDistribution::probability_of(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0.0 : it->second.probability;
}

double total_variation(const ViewDistribution& a, const ViewDistribution& b) {
  std::set<std::string> keys;
  for (const auto& [k, v] : a.entries()) keys.insert(k);
  for (const auto& [k, v] : b.entries()) keys.insert(k);
  double sum = 0.0;
  for (const auto& k : keys) sum += std::abs(a.probability_of(k) - b.probability_of(k));
  return 0.5 * sum;
}

namespace {

struct BoundCounter {
  const std::function<bool(ChoiceKind)>& filter;
  int total = 0;
  void add(ChoiceKind kind, int count) {
    if (!filter || filter(kind)) total += count;
  }
};

// Measurement branches per term: the first two outcomes of a GHZ round are
// uniform and the third is fixed by the parity law unless Charlie's basis
// is wrong. A coalition probe is counted as one more decision.
void add_padded_term(BoundCounter& c, bool probe, bool wrong_basis) {
  c.add(ChoiceKind::kPad, 2);
  c.add(ChoiceKind::kMeasurement, 2 + (probe ? 1 : 0) + (wrong_basis ? 1 : 0));
}

void check_bound(int log2) {
  if (log2 > kMaxBranchLog2) {
    throw EnumerationLimitError("enumeration needs up to 2^" + std::to_string(log2) +
                                " branches, limit is 2^" + std::to_string(kMaxBranchLog2));
  }
}

}  // namespace

int branch_bound_log2(const SchemeConfig& config, const boolfn::Decomposition& decomp,
                      const std::function<bool(ChoiceKind)>& filter) {
  BoundCounter c{filter};
  const int m = static_cast<int>(decomp.m());
  const bool probe = !config.quantum_coalition.empty();
  switch (config.scheme) {
    case Scheme::kA:
      c.add(ChoiceKind::kSharedBit, m);
      c.add(ChoiceKind::kMeasurement, 2 * m);
      break;
    case Scheme::kB:
    case Scheme::kBOneSided:
      for (int i = 0; i < m; ++i) add_padded_term(c, probe, false);
      break;
    case Scheme::kC: {
      const bool fake = config.cheat.strategy == CheatStrategy::kFakePad;
      for (int j = 0; j < config.policy.n_rep; ++j) {
        c.add(ChoiceKind::kTester, 2);
        for (int i = 0; i < m; ++i) add_padded_term(c, probe, fake);
      }
      break;
    }
  }
  return c.total;
}

int multiparty_branch_bound_log2(const boolfn::Degree2Form& form,
                                 const MultipartyConfig& config) {
  const std::function<bool(ChoiceKind)> all;
  BoundCounter c{all};
  const int terms = static_cast<int>(form.num_terms());
  const int reps = config.inner == InnerScheme::kC ? config.policy.n_rep : 1;
  for (int j = 0; j < reps; ++j) {
    if (config.inner == InnerScheme::kC) c.add(ChoiceKind::kTester, form.num_parties());
    for (int i = 0; i < terms; ++i) add_padded_term(c, false, false);
  }
  return c.total;
}

void for_each_branch(const SchemeConfig& config, const boolfn::Decomposition& decomp,
                     std::span<const Bit> x, std::span<const Bit> y,
                     const std::function<void(double, const SessionResult&)>& visit,
                     const BranchOptions& options) {
  check_bound(branch_bound_log2(config, decomp, options.enumerate_kind));
  decomp.assignment(x, y);
  SessionResult current;
  explore_branches([&](Chance& chance) { current = run_session(config, decomp, x, y, chance); },
                   [&](double p) { visit(p, current); }, options);
}

void for_each_multiparty_branch(const boolfn::Degree2Form& form, boolfn::Assignment inputs,
                                const MultipartyConfig& config,
                                const std::function<void(double, const SessionResult&)>& visit,
                                const BranchOptions& options) {
  if (!options.enumerate_kind) check_bound(multiparty_branch_bound_log2(form, config));
  SessionResult current;
  explore_branches(
      [&](Chance& chance) { current = run_multiparty(form, inputs, chance, config); },
      [&](double p) { visit(p, current); }, options);
}

std::map<PartyId, ViewDistribution> enumerate_views(const SchemeConfig& config,
                                                    const boolfn::Decomposition& decomp,
                                                    std::span<const Bit> x,
                                                    std::span<const Bit> y) {
  std::map<PartyId, ViewDistribution> out;
  for_each_branch(config, decomp, x, y, [&](double p, const SessionResult& r) {
    for (PartyId id : {kAlice, kBob, kCharlie}) out[id].add(r.view(id), p);
  });
  return out;
}

std::vector<ViewDistribution> enumerate_coalition_views(
    const SchemeConfig& config, const boolfn::Decomposition& decomp, std::span<const Bit> x,
    std::span<const Bit> y, const std::vector<std::vector<PartyId>>& coalitions) {
  std::vector<ViewDistribution> out(coalitions.size());
  for_each_branch(config, decomp, x, y, [&](double p, const SessionResult& r) {
    for (std::size_t c = 0; c < coalitions.size(); ++c) out[c].add(r.view(coalitions[c]), p);
  });
  return out;
}

std::vector<ViewDistribution> enumerate_multiparty_views(
    const boolfn::Degree2Form& form, boolfn::Assignment inputs,
    const std::vector<std::vector<PartyId>>& coalitions, const MultipartyConfig& config) {
  std::vector<ViewDistribution> out(coalitions.size());
  for_each_multiparty_branch(form, inputs, config, [&](double p, const SessionResult& r) {
    for (std::size_t c = 0; c < coalitions.size(); ++c) out[c].add(r.view(coalitions[c]), p);
  });
  return out;
}

}  // namespace ghzmpc::protocol
