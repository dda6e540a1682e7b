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
#include <cmath>
#include <map>

#include "ghzmpc/adversary.h"
#include "session.h"

namespace ghzmpc::adversary {

namespace {

namespace pi = protocol::internal;

// Honest and coalition variables of an n-party form.
struct Layout {
  std::vector<int> coalition_vars;
  std::vector<int> honest_vars;
  std::vector<int> honest_parties;
  std::vector<int> slot_of_party;  // index into honest_parties, or -1

  boolfn::Assignment combine(std::uint32_t xc, std::uint32_t h) const {
    boolfn::Assignment a = 0;
    for (std::size_t i = 0; i < coalition_vars.size(); ++i) {
      a |= static_cast<boolfn::Assignment>((xc >> i) & 1) << coalition_vars[i];
    }
    for (std::size_t i = 0; i < honest_vars.size(); ++i) {
      a |= static_cast<boolfn::Assignment>((h >> i) & 1) << honest_vars[i];
    }
    return a;
  }
};

Layout make_layout(const boolfn::Degree2Form& form, const Coalition& coalition) {
  const int n = form.num_parties();
  coalition.validate(n);
  Layout layout;
  layout.slot_of_party.assign(n, -1);
  std::vector<bool> member(n, false);
  for (PartyId p : coalition.members) member[p.index] = true;
  for (int j = 0; j < n; ++j) {
    if (!member[j]) {
      layout.slot_of_party[j] = static_cast<int>(layout.honest_parties.size());
      layout.honest_parties.push_back(j);
    }
  }
  for (int k = 0; k < static_cast<int>(form.variables.size()); ++k) {
    int owner = -1;
    for (int j = 0; j < n; ++j) {
      if (form.party_masks[j] & (boolfn::Assignment{1} << k)) owner = j;
    }
    (member.at(owner) ? layout.coalition_vars : layout.honest_vars).push_back(k);
  }
  return layout;
}

// Per term, for each input pair u = p | q << 1: coalition term view ->
// (mask of honest measured bits -> probability).
using TermTable = std::array<std::map<std::string, std::map<std::uint32_t, double>>, 4>;

TermTable tabulate_term(const boolfn::Degree2Form& form, const pi::MultipartyTerm& term,
                        int term_index, const Coalition& coalition, const Layout& layout,
                        protocol::Variant variant) {
  TermTable table;
  const auto roster = pi::multiparty_roster(form);
  for (int u = 0; u < 4; ++u) {
    protocol::SessionResult current;
    explore_branches(
        [&](Chance& chance) {
          pi::Session session(roster, chance);
          pi::PaddedTermOptions options;
          options.variant = variant;
          options.term = term_index;
          pi::run_padded_term(session, term.roles, u & 1, (u >> 1) & 1, options);
          current = session.finish(std::nullopt, std::nullopt);
        },
        [&](double p) {
          std::uint32_t mask = 0;
          for (PartyId role : {term.roles.alice, term.roles.bob, term.roles.charlie}) {
            const int slot = layout.slot_of_party[role.index];
            if (slot < 0) continue;
            for (const auto& m : current.records[role.index].measured) {
              mask ^= static_cast<std::uint32_t>(m.value) << slot;
            }
          }
          table[u][current.view(coalition.members).key()][mask] += p;
        });
  }
  return table;
}

std::string signature(const std::vector<double>& g) {
  double top = 0.0;
  for (double v : g) top = std::max(top, v);
  std::string key;
  key.reserve(g.size() * 8);
  for (double v : g) {
    key += std::to_string(std::llround(v / top * 1e9));
    key += ',';
  }
  return key;
}

double class_mutual_information(const std::vector<std::vector<double>>& classes, int nh,
                                int ns) {
  const double prior = 1.0 / nh;
  double mi = 0.0;
  for (const auto& g : classes) {
    for (int s = 0; s < ns; ++s) {
      double marginal = 0.0;
      for (int h = 0; h < nh; ++h) marginal += prior * g[h * ns + s];
      if (marginal <= 0.0) continue;
      for (int h = 0; h < nh; ++h) {
        const double p = g[h * ns + s];
        if (p > 0.0) mi += prior * p * std::log2(p / marginal);
      }
    }
  }
  return std::max(mi, 0.0);
}

double ideal_information(const boolfn::Degree2Form& form, const Layout& layout,
                         std::uint32_t xc) {
  const std::uint32_t nh = 1u << layout.honest_vars.size();
  std::vector<double> prior(nh, 1.0 / nh);
  std::vector<std::map<std::string, double>> lik(nh);
  for (std::uint32_t h = 0; h < nh; ++h) {
    lik[h][std::string(1, static_cast<char>('0' + form.evaluate(layout.combine(xc, h))))] = 1.0;
  }
  return mutual_information(prior, lik);
}

ThresholdEntry worst_case(const Coalition& coalition, const Layout& layout,
                          const std::function<std::pair<double, double>(std::uint32_t)>& leak) {
  ThresholdEntry entry;
  entry.coalition = coalition;
  bool first = true;
  for (std::uint32_t xc = 0; xc < (1u << layout.coalition_vars.size()); ++xc) {
    const auto [leakage, ideal] = leak(xc);
    if (first || leakage - ideal > entry.excess_bits) {
      first = false;
      entry.leakage_bits = leakage;
      entry.ideal_leakage_bits = ideal;
      entry.excess_bits = leakage - ideal;
    }
  }
  return entry;
}

constexpr std::size_t kMaxClasses = 1u << 20;

}  // namespace

ThresholdEntry multiparty_leakage(const boolfn::Degree2Form& form, const Coalition& coalition,
                                  protocol::Variant variant) {
  const Layout layout = make_layout(form, coalition);
  const auto terms = pi::multiparty_terms(form);
  std::vector<TermTable> tables;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    tables.push_back(
        tabulate_term(form, terms[k], static_cast<int>(k) + 1, coalition, layout, variant));
  }
  const int nh = 1 << layout.honest_vars.size();
  const int ns = 1 << layout.honest_parties.size();

  return worst_case(coalition, layout, [&](std::uint32_t xc) {
    std::vector<std::vector<int>> u_of(terms.size(), std::vector<int>(nh));
    for (int h = 0; h < nh; ++h) {
      const boolfn::Assignment a = layout.combine(xc, h);
      for (std::size_t k = 0; k < terms.size(); ++k) {
        u_of[k][h] = terms[k].term->low.eval(a) | (terms[k].term->high.eval(a) << 1);
      }
    }
    // Each class holds P(class, s | h) at index h * ns + s.
    std::vector<std::vector<double>> classes(1, std::vector<double>(nh * ns, 0.0));
    for (int h = 0; h < nh; ++h) classes[0][h * ns] = 1.0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      std::vector<std::string> keys;
      for (const auto& t : tables[k]) {
        for (const auto& [key, masks] : t) keys.push_back(key);
      }
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
      std::map<std::string, std::vector<double>> next;
      for (const auto& g : classes) {
        for (const auto& key : keys) {
          std::vector<double> out(nh * ns, 0.0);
          bool any = false;
          for (int h = 0; h < nh; ++h) {
            const auto& t = tables[k][u_of[k][h]];
            auto it = t.find(key);
            if (it == t.end()) continue;
            for (const auto& [d, p] : it->second) {
              for (int s = 0; s < ns; ++s) {
                const double v = g[h * ns + s];
                if (v == 0.0) continue;
                out[h * ns + (s ^ static_cast<int>(d))] += v * p;
                any = true;
              }
            }
          }
          if (!any) continue;
          auto [it, inserted] = next.try_emplace(signature(out), out);
          if (!inserted) {
            for (std::size_t i = 0; i < out.size(); ++i) it->second[i] += out[i];
          }
        }
      }
      if (next.size() > kMaxClasses) {
        throw EnumerationLimitError("too many likelihood classes in threshold audit");
      }
      classes.clear();
      for (auto& [sig, g] : next) classes.push_back(std::move(g));
    }
    return std::make_pair(class_mutual_information(classes, nh, ns),
                          ideal_information(form, layout, xc));
  });
}

ThresholdEntry multiparty_leakage_exhaustive(const boolfn::Degree2Form& form,
                                             const Coalition& coalition,
                                             protocol::Variant variant) {
  const Layout layout = make_layout(form, coalition);
  const std::uint32_t nh = 1u << layout.honest_vars.size();
  protocol::MultipartyConfig config;
  config.variant = variant;
  return worst_case(coalition, layout, [&](std::uint32_t xc) {
    std::vector<double> prior(nh, 1.0 / nh);
    std::vector<std::map<std::string, double>> lik(nh);
    for (std::uint32_t h = 0; h < nh; ++h) {
      const auto dists = protocol::enumerate_multiparty_views(form, layout.combine(xc, h),
                                                              {coalition.members}, config);
      for (const auto& [key, mass] : dists[0].entries()) lik[h][key] = mass.probability;
    }
    return std::make_pair(mutual_information(prior, lik), ideal_information(form, layout, xc));
  });
}

ThresholdReport threshold_audit(const boolfn::Degree2Form& form, protocol::Variant variant) {
  const int n = form.num_parties();
  if (n < 3 || n > 4) throw std::invalid_argument("threshold audit supports 3 or 4 parties");
  ThresholdReport report;
  report.num_parties = n;
  for (std::uint32_t set = 1; set + 1 < (1u << n); ++set) {
    Coalition coalition;
    for (int j = 0; j < n; ++j) {
      if (set & (1u << j)) coalition.members.push_back(PartyId{j});
    }
    auto entry = multiparty_leakage(form, coalition, variant);
    const int size = static_cast<int>(coalition.members.size());
    auto [it, inserted] = report.max_excess_by_size.try_emplace(size, entry.excess_bits);
    if (!inserted) it->second = std::max(it->second, entry.excess_bits);
    report.entries.push_back(std::move(entry));
  }
  return report;
}

nlohmann::json ThresholdReport::to_json(const std::vector<std::string>& roster) const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : entries) {
    rows.push_back({{"coalition", e.coalition.str(roster)},
                    {"size", e.coalition.members.size()},
                    {"leakage_bits", e.leakage_bits},
                    {"ideal_leakage_bits", e.ideal_leakage_bits},
                    {"excess_bits", e.excess_bits}});
  }
  nlohmann::json by_size = nlohmann::json::object();
  for (const auto& [size, excess] : max_excess_by_size) by_size[std::to_string(size)] = excess;
  return {{"num_parties", num_parties}, {"entries", rows}, {"max_excess_by_size", by_size}};
}

}  // namespace ghzmpc::adversary
