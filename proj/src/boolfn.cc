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

#include "ghzmpc/boolfn.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace ghzmpc::boolfn {

namespace {

std::vector<std::string> flatten_names(const std::vector<PartySpec>& parties) {
  std::vector<std::string> names;
  for (const auto& p : parties) {
    names.insert(names.end(), p.variables.begin(), p.variables.end());
  }
  return names;
}

void validate_layout(const std::vector<PartySpec>& parties) {
  if (parties.empty()) throw std::invalid_argument("function has no parties");
  std::set<std::string> seen_parties, seen_vars;
  std::size_t count = 0;
  for (const auto& p : parties) {
    if (!seen_parties.insert(p.name).second) {
      throw std::invalid_argument("duplicate party '" + p.name + "'");
    }
    for (const auto& v : p.variables) {
      if (!seen_vars.insert(v).second) {
        throw std::invalid_argument("variable '" + v +
                                    "' is declared for more than one party");
      }
      ++count;
    }
  }
  if (count > static_cast<std::size_t>(kMaxVariables)) {
    throw std::invalid_argument("functions are limited to " +
                                std::to_string(kMaxVariables) + " variables, got " +
                                std::to_string(count));
  }
}

// Recursive-descent parser evaluating straight into truth tables.
class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& names)
      : text_(text), size_(std::size_t{1} << names.size()) {
    for (std::size_t k = 0; k < names.size(); ++k) index_[names[k]] = static_cast<int>(k);
  }

  std::vector<Bit> parse() {
    auto table = parse_or();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return table;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(std::string_view ops) {
    skip_space();
    if (pos_ < text_.size() && ops.find(text_[pos_]) != std::string_view::npos) {
      ++pos_;
      return true;
    }
    return false;
  }

  // a | b == a ^ b ^ (a & b)
  std::vector<Bit> parse_or() {
    auto lhs = parse_xor();
    while (accept("|")) {
      auto rhs = parse_xor();
      for (std::size_t i = 0; i < size_; ++i) lhs[i] = lhs[i] ^ rhs[i] ^ (lhs[i] & rhs[i]);
    }
    return lhs;
  }

  std::vector<Bit> parse_xor() {
    auto lhs = parse_and();
    while (accept("^+")) {
      auto rhs = parse_and();
      for (std::size_t i = 0; i < size_; ++i) lhs[i] ^= rhs[i];
    }
    return lhs;
  }

  std::vector<Bit> parse_and() {
    auto lhs = parse_unary();
    while (accept("&*")) {
      auto rhs = parse_unary();
      for (std::size_t i = 0; i < size_; ++i) lhs[i] &= rhs[i];
    }
    return lhs;
  }

  // !a == a ^ 1
  std::vector<Bit> parse_unary() {
    if (accept("!~")) {
      auto operand = parse_unary();
      for (auto& b : operand) b ^= 1;
      return operand;
    }
    return parse_primary();
  }

  std::vector<Bit> parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = parse_or();
      if (!accept(")")) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (c == '0' || c == '1') {
      ++pos_;
      if (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError("bad constant", start);
      }
      return std::vector<Bit>(size_, static_cast<Bit>(c - '0'));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      auto it = index_.find(name);
      if (it == index_.end()) throw ParseError("undeclared variable '" + name + "'", start);
      std::vector<Bit> table(size_);
      for (std::size_t i = 0; i < size_; ++i) table[i] = (i >> it->second) & 1;
      return table;
    }
    throw ParseError(std::string("unexpected '") + c + "'", start);
  }

  std::string_view text_;
  std::size_t size_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, int> index_;
};

}  // namespace

BooleanFunction::BooleanFunction(std::vector<PartySpec> parties,
                                 std::vector<Bit> truth_table)
    : parties_(std::move(parties)), table_(std::move(truth_table)) {
  validate_layout(parties_);
  names_ = flatten_names(parties_);
  if (table_.size() != (std::size_t{1} << names_.size())) {
    throw std::invalid_argument("truth table length must be 2^" +
                                std::to_string(names_.size()));
  }
  for (auto& b : table_) b &= 1;
  int k = 0;
  for (int p = 0; p < num_parties(); ++p) {
    Assignment mask = 0;
    for (std::size_t v = 0; v < parties_[p].variables.size(); ++v, ++k) {
      owner_.push_back(p);
      mask |= Assignment{1} << k;
    }
    party_masks_.push_back(mask);
  }
}

int BooleanFunction::variable_index(std::string_view name) const {
  for (std::size_t k = 0; k < names_.size(); ++k) {
    if (names_[k] == name) return static_cast<int>(k);
  }
  return -1;
}

Assignment BooleanFunction::assignment(std::span<const std::vector<Bit>> party_bits) const {
  if (party_bits.size() != parties_.size()) {
    throw std::invalid_argument("expected inputs for " + std::to_string(parties_.size()) +
                                " parties");
  }
  Assignment out = 0;
  int k = 0;
  for (std::size_t p = 0; p < parties_.size(); ++p) {
    if (party_bits[p].size() != parties_[p].variables.size()) {
      throw std::invalid_argument("party '" + parties_[p].name + "' expects " +
                                  std::to_string(parties_[p].variables.size()) +
                                  " input bits");
    }
    for (Bit b : party_bits[p]) {
      if (b & 1) out |= Assignment{1} << k;
      ++k;
    }
  }
  return out;
}

std::vector<Bit> BooleanFunction::party_bits(Assignment assignment, int party) const {
  std::vector<Bit> bits;
  for (int k = 0; k < num_variables(); ++k) {
    if (owner_[k] == party) bits.push_back((assignment >> k) & 1);
  }
  return bits;
}

BooleanFunction parse_expression(std::string_view text, std::vector<PartySpec> parties) {
  validate_layout(parties);
  auto table = Parser(text, flatten_names(parties)).parse();
  return BooleanFunction(std::move(parties), std::move(table));
}

BooleanFunction parse_function_json(std::string_view json_text) {
  const auto doc = nlohmann::ordered_json::parse(json_text);
  if (!doc.contains("parties") || !doc["parties"].is_object() || !doc.contains("expr")) {
    throw std::invalid_argument("function file needs 'parties' (object) and 'expr'");
  }
  std::vector<PartySpec> parties;
  for (const auto& [name, vars] : doc["parties"].items()) {
    parties.push_back({name, vars.get<std::vector<std::string>>()});
  }
  return parse_expression(doc["expr"].get<std::string>(), std::move(parties));
}

BooleanFunction load_function_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open function file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_function_json(buffer.str());
}

Anf::Anf(std::vector<std::string> variables, std::vector<Monomial> monomials)
    : variables_(std::move(variables)), monomials_(std::move(monomials)) {
  std::sort(monomials_.begin(), monomials_.end());
  // XOR semantics: pairs of equal monomials cancel.
  std::vector<Monomial> reduced;
  for (std::size_t i = 0; i < monomials_.size();) {
    std::size_t j = i;
    while (j < monomials_.size() && monomials_[j] == monomials_[i]) ++j;
    if ((j - i) % 2 == 1) reduced.push_back(monomials_[i]);
    i = j;
  }
  monomials_ = std::move(reduced);
}

Anf Anf::constant(std::vector<std::string> variables, Bit value) {
  return Anf(std::move(variables), value ? std::vector<Monomial>{0} : std::vector<Monomial>{});
}

Assignment Anf::support() const {
  Assignment s = 0;
  for (Monomial m : monomials_) s |= m;
  return s;
}

Bit Anf::eval(Assignment assignment) const {
  Bit out = 0;
  for (Monomial m : monomials_) out ^= (assignment & m) == m;
  return out;
}

std::string monomial_str(Monomial monomial, const std::vector<std::string>& names) {
  if (monomial == 0) return "1";
  std::string out;
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (monomial >> k & 1) {
      if (!out.empty()) out += "*";
      out += names[k];
    }
  }
  return out;
}

std::string Anf::str() const {
  if (monomials_.empty()) return "0";
  std::string out;
  for (Monomial m : monomials_) {
    if (!out.empty()) out += " ^ ";
    out += monomial_str(m, variables_);
  }
  return out;
}

Anf to_anf(const BooleanFunction& f) {
  std::vector<Bit> a = f.truth_table();
  const int n = f.num_variables();
  for (int k = 0; k < n; ++k) {
    const std::size_t bit = std::size_t{1} << k;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i & bit) a[i] ^= a[i ^ bit];
    }
  }
  std::vector<Monomial> monomials;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i]) monomials.push_back(static_cast<Monomial>(i));
  }
  return Anf(f.variable_names(), std::move(monomials));
}

Bit eval_anf(const Anf& p, Assignment assignment) { return p.eval(assignment); }

Bit eval_anf(const Anf& p, const std::map<std::string, Bit>& assignment) {
  Assignment mask = 0;
  const Assignment needed = p.support();
  for (std::size_t k = 0; k < p.variables().size(); ++k) {
    auto it = assignment.find(p.variables()[k]);
    if (it == assignment.end()) {
      if (needed >> k & 1) {
        throw std::invalid_argument("assignment is missing variable '" +
                                    p.variables()[k] + "'");
      }
      continue;
    }
    if (it->second & 1) mask |= Assignment{1} << k;
  }
  return p.eval(mask);
}

Assignment Decomposition::assignment(std::span<const Bit> x, std::span<const Bit> y) const {
  if (x.size() != alice_arity() || y.size() != bob_arity()) {
    throw std::invalid_argument("inputs do not match the decomposition arity (" +
                                std::to_string(alice_arity()) + ", " +
                                std::to_string(bob_arity()) + ")");
  }
  Assignment out = 0;
  std::size_t k = 0;
  for (Bit b : x) out |= Assignment{static_cast<Assignment>(b & 1)} << k++;
  for (Bit b : y) out |= Assignment{static_cast<Assignment>(b & 1)} << k++;
  return out;
}

Bit Decomposition::evaluate(Assignment assignment) const {
  Bit out = 0;
  for (const auto& t : terms) out ^= t.p.eval(assignment) & t.q.eval(assignment);
  return out;
}

Decomposition inner_product_decomposition(const BooleanFunction& f) {
  if (f.num_parties() != 2) {
    throw std::invalid_argument("inner-product decomposition needs exactly 2 parties, got " +
                                std::to_string(f.num_parties()));
  }
  Decomposition d;
  d.variables = f.variable_names();
  d.parties = f.parties();
  d.alice_mask = f.party_mask(0);
  d.bob_mask = f.party_mask(1);
  const Anf anf = to_anf(f);
  std::vector<Monomial> alice_parts;
  std::vector<std::vector<Monomial>> bob_parts;
  for (Monomial m : anf.monomials()) {
    const Monomial a = m & d.alice_mask;
    auto it = std::find(alice_parts.begin(), alice_parts.end(), a);
    if (it == alice_parts.end()) {
      alice_parts.push_back(a);
      bob_parts.emplace_back();
      it = alice_parts.end() - 1;
    }
    bob_parts[it - alice_parts.begin()].push_back(m & d.bob_mask);
  }
  for (std::size_t i = 0; i < alice_parts.size(); ++i) {
    d.terms.push_back({Anf(d.variables, {alice_parts[i]}),
                       Anf(d.variables, std::move(bob_parts[i]))});
  }
  return d;
}

Bit Degree2Form::lambda(int j1, int j2) const {
  auto it = buckets.find({std::max(j1, j2), std::min(j1, j2)});
  return it != buckets.end() && !it->second.empty();
}

Bit Degree2Form::evaluate(Assignment assignment) const {
  Bit out = 0;
  for (const auto& [pair, terms] : buckets) {
    for (const auto& t : terms) out ^= t.high.eval(assignment) & t.low.eval(assignment);
  }
  return out;
}

std::size_t Degree2Form::num_terms() const {
  std::size_t n = 0;
  for (const auto& [pair, terms] : buckets) n += terms.size();
  return n;
}

int party_span(const BooleanFunction& f, Monomial monomial) {
  int span = 0;
  for (int p = 0; p < f.num_parties(); ++p) span += (monomial & f.party_mask(p)) != 0;
  return span;
}

Degree2Form degree2_decomposition(const BooleanFunction& f, int num_parties) {
  if (num_parties < 3) {
    throw std::invalid_argument("degree-2 form needs at least 3 parties");
  }
  if (f.num_parties() != num_parties) {
    throw std::invalid_argument("function declares " + std::to_string(f.num_parties()) +
                                " parties, expected " + std::to_string(num_parties));
  }
  Degree2Form form;
  form.variables = f.variable_names();
  form.parties = f.parties();
  for (int p = 0; p < num_parties; ++p) form.party_masks.push_back(f.party_mask(p));

  const Anf anf = to_anf(f);
  const auto& names = form.variables;
  // Cross-party monomials grouped by their high-party part within a bucket.
  std::map<PartyPair, std::vector<std::pair<Monomial, std::vector<Monomial>>>> grouped;
  std::vector<std::pair<PartyPair, PairTerm>> folded;
  for (Monomial m : anf.monomials()) {
    std::vector<int> touched;
    for (int p = 0; p < num_parties; ++p) {
      if (m & form.party_masks[p]) touched.push_back(p);
    }
    if (touched.size() > 2) throw Degree2ViolationError(m, monomial_str(m, names));
    if (touched.size() == 2) {
      const PartyPair key{touched[1], touched[0]};
      const Monomial high = m & form.party_masks[touched[1]];
      const Monomial low = m & form.party_masks[touched[0]];
      auto& groups = grouped[key];
      auto it = std::find_if(groups.begin(), groups.end(),
                             [&](const auto& g) { return g.first == high; });
      if (it == groups.end()) {
        groups.push_back({high, {}});
        it = groups.end() - 1;
      }
      it->second.push_back(low);
    } else if (touched.size() == 1) {
      const int j = touched[0];
      const int partner = j == 0 ? 1 : 0;
      PairTerm t;
      t.origin = TermOrigin::kLocal;
      if (j > partner) {
        t.high = Anf(names, {m});
        t.low = Anf::constant(names, 1);
      } else {
        t.high = Anf::constant(names, 1);
        t.low = Anf(names, {m});
      }
      folded.push_back({{std::max(j, partner), std::min(j, partner)}, std::move(t)});
    } else {
      PairTerm t{Anf::constant(names, 1), Anf::constant(names, 1), TermOrigin::kConstant};
      folded.push_back({{1, 0}, std::move(t)});
    }
  }
  for (auto& [key, groups] : grouped) {
    for (auto& [high, lows] : groups) {
      form.buckets[key].push_back(
          {Anf(names, {high}), Anf(names, std::move(lows)), TermOrigin::kCrossParty});
    }
  }
  for (auto& [key, term] : folded) form.buckets[key].push_back(std::move(term));
  return form;
}

}  // namespace ghzmpc::boolfn
