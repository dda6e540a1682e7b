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
#include <cctype>
#include <cmath>
#include <sstream>

#include "adversary_internal.h"
#include "ghzmpc/adversary.h"

namespace ghzmpc::adversary {

void Coalition::validate(int num_parties) const {
  if (members.empty()) throw std::invalid_argument("coalition must not be empty");
  std::vector<PartyId> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("coalition lists a party twice");
  }
  for (PartyId p : sorted) {
    if (p.index < 0 || p.index >= num_parties) {
      throw std::invalid_argument("coalition member is not a session party");
    }
  }
  if (static_cast<int>(sorted.size()) > num_parties - 1) {
    throw std::invalid_argument("coalition of size " + std::to_string(sorted.size()) +
                                " leaves no honest party");
  }
}

std::string Coalition::str(const std::vector<std::string>& roster) const {
  std::string out;
  for (PartyId p : members) {
    if (!out.empty()) out += ",";
    out += p.index >= 0 && p.index < static_cast<int>(roster.size())
               ? roster[p.index]
               : std::to_string(p.index);
  }
  return out;
}

Coalition parse_coalition(const std::string& text, const std::vector<std::string>& roster,
                          bool may_exchange_quantum) {
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
  };
  Coalition out;
  out.may_exchange_quantum = may_exchange_quantum;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    int found = -1;
    for (std::size_t i = 0; i < roster.size(); ++i) {
      if (lower(roster[i]) == lower(item)) found = static_cast<int>(i);
    }
    if (found < 0 && std::all_of(item.begin(), item.end(), ::isdigit)) found = std::stoi(item);
    if (found < 0 || found >= static_cast<int>(roster.size())) {
      throw std::invalid_argument("unknown coalition member '" + item + "'");
    }
    out.members.push_back(PartyId{found});
  }
  std::sort(out.members.begin(), out.members.end());
  out.validate(static_cast<int>(roster.size()));
  return out;
}

double mutual_information(const std::vector<double>& prior,
                          const std::vector<std::map<std::string, double>>& likelihoods) {
  if (prior.size() != likelihoods.size()) {
    throw std::invalid_argument("prior and likelihoods differ in size");
  }
  std::map<std::string, double> marginal;
  for (std::size_t h = 0; h < prior.size(); ++h) {
    for (const auto& [v, p] : likelihoods[h]) marginal[v] += prior[h] * p;
  }
  double mi = 0.0;
  for (std::size_t h = 0; h < prior.size(); ++h) {
    if (prior[h] <= 0.0) continue;
    for (const auto& [v, p] : likelihoods[h]) {
      if (p <= 0.0) continue;
      mi += prior[h] * p * std::log2(p / marginal.at(v));
    }
  }
  return std::max(mi, 0.0);
}

namespace internal {

TwoPartyLayout::TwoPartyLayout(const boolfn::Decomposition& decomp, const Coalition& coalition)
    : decomp_(decomp) {
  coalition.validate(3);
  auto member = [&](PartyId p) {
    return std::find(coalition.members.begin(), coalition.members.end(), p) !=
           coalition.members.end();
  };
  const int na = static_cast<int>(decomp.alice_arity());
  const int nb = static_cast<int>(decomp.bob_arity());
  for (int k = 0; k < na + nb; ++k) {
    const PartyId owner = k < na ? protocol::kAlice : protocol::kBob;
    (member(owner) ? coalition_vars_ : honest_vars_).push_back(k);
  }
}

std::vector<std::string> TwoPartyLayout::honest_names() const {
  std::vector<std::string> out;
  for (int k : honest_vars_) out.push_back(decomp_.variables.at(k));
  return out;
}

void TwoPartyLayout::split(std::uint32_t coalition_bits, std::uint32_t honest_bits,
                           std::vector<Bit>& x, std::vector<Bit>& y) const {
  const std::size_t na = decomp_.alice_arity();
  x.assign(na, 0);
  y.assign(decomp_.bob_arity(), 0);
  auto put = [&](int var, Bit value) {
    if (static_cast<std::size_t>(var) < na) {
      x[var] = value;
    } else {
      y[var - na] = value;
    }
  };
  for (std::size_t i = 0; i < coalition_vars_.size(); ++i) {
    put(coalition_vars_[i], (coalition_bits >> i) & 1);
  }
  for (std::size_t i = 0; i < honest_vars_.size(); ++i) {
    put(honest_vars_[i], (honest_bits >> i) & 1);
  }
}

std::vector<std::map<std::string, double>> TwoPartyLayout::view_likelihoods(
    const protocol::SchemeConfig& config, const Coalition& coalition,
    std::uint32_t coalition_bits) const {
  protocol::SchemeConfig run = config;
  if (coalition.may_exchange_quantum) run.quantum_coalition = coalition.members;
  std::vector<std::map<std::string, double>> out(honest_assignments());
  std::vector<Bit> x, y;
  for (std::uint32_t h = 0; h < honest_assignments(); ++h) {
    split(coalition_bits, h, x, y);
    const auto dists =
        protocol::enumerate_coalition_views(run, decomp_, x, y, {coalition.members});
    for (const auto& [key, mass] : dists[0].entries()) out[h][key] = mass.probability;
  }
  return out;
}

std::vector<std::map<std::string, double>> TwoPartyLayout::ideal_likelihoods(
    bool learns, std::uint32_t coalition_bits) const {
  std::vector<std::map<std::string, double>> out(honest_assignments());
  std::vector<Bit> x, y;
  for (std::uint32_t h = 0; h < honest_assignments(); ++h) {
    split(coalition_bits, h, x, y);
    const Bit f = decomp_.evaluate(decomp_.assignment(x, y));
    out[h][learns ? std::string(1, static_cast<char>('0' + f)) : std::string()] = 1.0;
  }
  return out;
}

}  // namespace internal

bool learns_output(protocol::Scheme scheme, const Coalition& coalition) {
  if (scheme == protocol::Scheme::kBOneSided) {
    return std::find(coalition.members.begin(), coalition.members.end(), protocol::kBob) !=
           coalition.members.end();
  }
  return true;
}

nlohmann::json PosteriorReport::to_json() const {
  nlohmann::ordered_json out;
  out["honest_variables"] = honest_variables;
  auto table = [&](const std::vector<double>& dist) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t h = 0; h < dist.size(); ++h) {
      nlohmann::ordered_json row;
      for (std::size_t k = 0; k < honest_variables.size(); ++k) {
        row[honest_variables[k]] = (h >> k) & 1;
      }
      arr.push_back({{"inputs", row}, {"probability", dist[h]}});
    }
    return arr;
  };
  out["prior"] = table(prior);
  out["posterior"] = table(posterior);
  out["leakage_bits"] = leakage_bits;
  out["ideal_leakage_bits"] = ideal_leakage_bits;
  out["excess_bits"] = excess_bits();
  return nlohmann::json::parse(out.dump());
}

PosteriorReport posterior_from_view(const protocol::SchemeConfig& config,
                                    const boolfn::Decomposition& decomp,
                                    const Coalition& coalition,
                                    const protocol::PartyView& observed,
                                    const std::vector<double>& prior) {
  const internal::TwoPartyLayout layout(decomp, coalition);
  if (observed.local_inputs.size() != layout.coalition_vars().size()) {
    throw std::invalid_argument("observed view does not belong to this coalition");
  }
  std::uint32_t xc = 0;
  for (std::size_t i = 0; i < observed.local_inputs.size(); ++i) {
    xc |= static_cast<std::uint32_t>(observed.local_inputs[i] & 1) << i;
  }
  PosteriorReport report;
  report.honest_variables = layout.honest_names();
  const std::size_t n = layout.honest_assignments();
  report.prior = prior.empty() ? std::vector<double>(n, 1.0 / static_cast<double>(n)) : prior;
  if (report.prior.size() != n) throw std::invalid_argument("prior has the wrong size");

  const auto lik = layout.view_likelihoods(config, coalition, xc);
  const std::string key = observed.key();
  report.posterior.assign(n, 0.0);
  double total = 0.0;
  for (std::size_t h = 0; h < n; ++h) {
    auto it = lik[h].find(key);
    report.posterior[h] = report.prior[h] * (it == lik[h].end() ? 0.0 : it->second);
    total += report.posterior[h];
  }
  if (total <= 0.0) {
    throw InconsistentViewError("observed view has probability 0 under every honest input");
  }
  for (double& p : report.posterior) p /= total;
  report.leakage_bits = mutual_information(report.prior, lik);
  report.ideal_leakage_bits = mutual_information(
      report.prior, layout.ideal_likelihoods(learns_output(config.scheme, coalition), xc));
  return report;
}

namespace {

using Likelihoods = std::vector<std::map<std::string, double>>;

// Picks the coalition inputs with the largest excess.
LeakageAudit worst_case_audit(const internal::TwoPartyLayout& layout, const Coalition& coalition,
                              const std::vector<Likelihoods>& by_inputs, bool learns) {
  const std::size_t n = layout.honest_assignments();
  const std::vector<double> prior(n, 1.0 / static_cast<double>(n));
  LeakageAudit audit;
  audit.coalition = coalition;
  bool first = true;
  for (std::uint32_t xc = 0; xc < by_inputs.size(); ++xc) {
    const double leak = mutual_information(prior, by_inputs[xc]);
    const double ideal = mutual_information(prior, layout.ideal_likelihoods(learns, xc));
    if (first || leak - ideal > audit.excess_bits) {
      first = false;
      audit.leakage_bits = leak;
      audit.ideal_leakage_bits = ideal;
      audit.excess_bits = leak - ideal;
      audit.worst_inputs.clear();
      for (std::size_t i = 0; i < layout.coalition_vars().size(); ++i) {
        audit.worst_inputs.push_back((xc >> i) & 1);
      }
    }
  }
  return audit;
}

std::uint32_t gather(boolfn::Assignment a, const std::vector<int>& vars) {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < vars.size(); ++i) out |= ((a >> vars[i]) & 1u) << i;
  return out;
}

}  // namespace

LeakageAudit audit_leakage(const protocol::SchemeConfig& config,
                           const boolfn::Decomposition& decomp, const Coalition& coalition) {
  return audit_leakage(config, decomp, std::vector<Coalition>{coalition}).front();
}

std::vector<LeakageAudit> audit_leakage(const protocol::SchemeConfig& config,
                                        const boolfn::Decomposition& decomp,
                                        const std::vector<Coalition>& coalitions) {
  std::vector<internal::TwoPartyLayout> layouts;
  std::vector<std::vector<Likelihoods>> lik;
  for (const auto& c : coalitions) {
    layouts.emplace_back(decomp, c);
    lik.emplace_back(std::size_t{1} << layouts.back().coalition_vars().size(),
                     Likelihoods(layouts.back().honest_assignments()));
  }
  // Classical coalitions share one enumeration; a quantum coalition changes
  // the session itself and needs its own.
  std::vector<std::vector<std::size_t>> groups(1);
  for (std::size_t i = 0; i < coalitions.size(); ++i) {
    if (coalitions[i].may_exchange_quantum) {
      groups.push_back({i});
    } else {
      groups[0].push_back(i);
    }
  }
  const std::size_t na = decomp.alice_arity();
  const std::size_t nv = na + decomp.bob_arity();
  for (const auto& group : groups) {
    if (group.empty()) continue;
    protocol::SchemeConfig run = config;
    if (coalitions[group[0]].may_exchange_quantum) {
      run.quantum_coalition = coalitions[group[0]].members;
    }
    for (boolfn::Assignment a = 0; a < (boolfn::Assignment{1} << nv); ++a) {
      std::vector<Bit> x(na), y(nv - na);
      for (std::size_t k = 0; k < nv; ++k) (k < na ? x[k] : y[k - na]) = (a >> k) & 1;
      std::vector<std::map<std::string, double>*> targets;
      for (std::size_t i : group) {
        targets.push_back(&lik[i][gather(a, layouts[i].coalition_vars())]
                              [gather(a, layouts[i].honest_vars())]);
      }
      protocol::for_each_branch(run, decomp, x, y, [&](double p, const protocol::SessionResult& r) {
        for (std::size_t g = 0; g < group.size(); ++g) {
          (*targets[g])[r.view(coalitions[group[g]].members).key()] += p;
        }
      });
    }
  }
  std::vector<LeakageAudit> out;
  for (std::size_t i = 0; i < coalitions.size(); ++i) {
    out.push_back(worst_case_audit(layouts[i], coalitions[i], lik[i],
                                   learns_output(config.scheme, coalitions[i])));
  }
  return out;
}

nlohmann::json LeakageAudit::to_json(const std::vector<std::string>& roster) const {
  nlohmann::ordered_json out;
  out["coalition"] = coalition.str(roster);
  out["may_exchange_quantum"] = coalition.may_exchange_quantum;
  out["worst_inputs"] = worst_inputs;
  out["leakage_bits"] = leakage_bits;
  out["ideal_leakage_bits"] = ideal_leakage_bits;
  out["excess_bits"] = excess_bits;
  return nlohmann::json::parse(out.dump());
}

}  // namespace ghzmpc::adversary
