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

// Boolean functions over variables owned by parties, their algebraic normal
// form over GF(2), and the decompositions consumed by the protocols.
//
// Variables are numbered in declaration order, parties in declaration order
// (the first party's variables first). An assignment is a bit mask: bit k
// holds the value of variable k. Truth tables are indexed by assignment.

#ifndef GHZMPC_BOOLFN_H_
#define GHZMPC_BOOLFN_H_

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ghzmpc/random.h"

namespace ghzmpc::boolfn {

using Assignment = std::uint32_t;
// Set of variables multiplied together; bit k set means variable k.
using Monomial = std::uint32_t;

inline constexpr int kMaxVariables = 20;

struct PartySpec {
  std::string name;
  std::vector<std::string> variables;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::invalid_argument(message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class BooleanFunction {
 public:
  // `truth_table` must have 2^(number of declared variables) entries.
  // Throws std::invalid_argument for duplicate variables, an empty layout or
  // more than kMaxVariables variables.
  BooleanFunction(std::vector<PartySpec> parties, std::vector<Bit> truth_table);

  const std::vector<PartySpec>& parties() const { return parties_; }
  const std::vector<std::string>& variable_names() const { return names_; }
  int num_variables() const { return static_cast<int>(names_.size()); }
  int num_parties() const { return static_cast<int>(parties_.size()); }
  int party_of(int variable) const { return owner_.at(variable); }
  // Mask of the variables owned by `party`.
  Assignment party_mask(int party) const { return party_masks_.at(party); }
  // Index of the named variable, or -1.
  int variable_index(std::string_view name) const;

  const std::vector<Bit>& truth_table() const { return table_; }
  Bit eval(Assignment assignment) const { return table_.at(assignment); }

  // Builds the full assignment from per-party bit vectors (one entry per
  // owned variable, in declaration order).
  Assignment assignment(std::span<const std::vector<Bit>> party_bits) const;
  // The bits of `assignment` owned by `party`.
  std::vector<Bit> party_bits(Assignment assignment, int party) const;

 private:
  std::vector<PartySpec> parties_;
  std::vector<std::string> names_;
  std::vector<int> owner_;
  std::vector<Assignment> party_masks_;
  std::vector<Bit> table_;
};

// Grammar, lowest precedence first: '|' (OR), '^' or '+' (XOR), '&' or '*'
// (AND), prefix '!' or '~' (NOT); parentheses; constants 0 and 1; declared
// identifiers.
BooleanFunction parse_expression(std::string_view text,
                                 std::vector<PartySpec> parties);

// {"parties": {"alice": ["x1", ...], "bob": [...]}, "expr": "x1 & y1"};
// party order follows the file.
BooleanFunction parse_function_json(std::string_view json_text);
BooleanFunction load_function_file(const std::string& path);

// XOR of monomials over a fixed variable universe; monomials are kept
// sorted and unique.
class Anf {
 public:
  Anf() = default;
  Anf(std::vector<std::string> variables, std::vector<Monomial> monomials);

  static Anf constant(std::vector<std::string> variables, Bit value);

  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  bool is_zero() const { return monomials_.empty(); }
  // Union of the variables appearing in any monomial.
  Assignment support() const;

  Bit eval(Assignment assignment) const;
  std::string str() const;

  friend bool operator==(const Anf&, const Anf&) = default;

 private:
  std::vector<std::string> variables_;
  std::vector<Monomial> monomials_;
};

std::string monomial_str(Monomial monomial, const std::vector<std::string>& names);

// Standard GF(2) Moebius transform of the truth table.
Anf to_anf(const BooleanFunction& f);

Bit eval_anf(const Anf& p, Assignment assignment);
// Throws std::invalid_argument when a variable used by `p` is missing.
Bit eval_anf(const Anf& p, const std::map<std::string, Bit>& assignment);

// f = XOR_i P_i(x) Q_i(y) with P_i over the first party's variables and Q_i
// over the second's.
struct InnerProductTerm {
  Anf p;
  Anf q;
};

struct Decomposition {
  std::vector<std::string> variables;
  std::vector<PartySpec> parties;  // exactly two
  Assignment alice_mask = 0;
  Assignment bob_mask = 0;
  std::vector<InnerProductTerm> terms;

  std::size_t m() const { return terms.size(); }
  std::size_t alice_arity() const { return parties.at(0).variables.size(); }
  std::size_t bob_arity() const { return parties.at(1).variables.size(); }
  // Throws std::invalid_argument on an arity mismatch.
  Assignment assignment(std::span<const Bit> x, std::span<const Bit> y) const;
  Bit evaluate(Assignment assignment) const;
};

// Groups the ANF monomials by their first-party part: every distinct part
// becomes one P_i (in order of first appearance in the sorted ANF) and Q_i
// is the XOR of the matching second-party parts.
Decomposition inner_product_decomposition(const BooleanFunction& f);

class Degree2ViolationError : public std::invalid_argument {
 public:
  Degree2ViolationError(Monomial monomial, const std::string& rendered)
      : std::invalid_argument("monomial " + rendered +
                              " spans three or more parties"),
        monomial_(monomial), rendered_(rendered) {}
  Monomial monomial() const { return monomial_; }
  const std::string& rendered() const { return rendered_; }

 private:
  Monomial monomial_;
  std::string rendered_;
};

enum class TermOrigin {
  kCrossParty,  // the monomial touches both parties of the pair
  kLocal,       // single-party monomial, partner polynomial is 1
  kConstant,    // the constant monomial, both polynomials are 1
};

struct PairTerm {
  Anf high;  // polynomial of the higher-index party
  Anf low;   // polynomial of the lower-index party
  TermOrigin origin = TermOrigin::kCrossParty;
};

// Key of a pair bucket: (j1, j2) with j1 > j2.
using PartyPair = std::pair<int, int>;

struct Degree2Form {
  std::vector<std::string> variables;
  std::vector<PartySpec> parties;
  std::vector<Assignment> party_masks;
  std::map<PartyPair, std::vector<PairTerm>> buckets;

  int num_parties() const { return static_cast<int>(parties.size()); }
  // Whether the pair (j1, j2) takes part in the computation.
  Bit lambda(int j1, int j2) const;
  Bit evaluate(Assignment assignment) const;
  std::size_t num_terms() const;
};

// Succeeds iff every monomial of the ANF spans at most two parties.
// Single-party monomials of party j go to the bucket of j and the
// lowest-index other party; the constant monomial goes to bucket (1, 0).
Degree2Form degree2_decomposition(const BooleanFunction& f, int num_parties);

// Number of distinct parties touched by `monomial`.
int party_span(const BooleanFunction& f, Monomial monomial);

}  // namespace ghzmpc::boolfn

#endif  // GHZMPC_BOOLFN_H_
