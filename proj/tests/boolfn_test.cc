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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "oracles.h"

namespace ghzmpc::boolfn {
namespace {

std::string data(const std::string& name) {
  return std::string(GHZMPC_DATA_DIR) + "/" + name + ".json";
}

std::vector<PartySpec> two(std::vector<std::string> a, std::vector<std::string> b) {
  return {{"alice", std::move(a)}, {"bob", std::move(b)}};
}

// Coefficient of monomial S is the XOR of f over all subsets of S.
std::set<Monomial> oracle_anf(const std::vector<Bit>& table) {
  std::set<Monomial> out;
  for (Monomial s = 0; s < table.size(); ++s) {
    Bit c = 0;
    for (Monomial t = s;; t = (t - 1) & s) {
      c ^= table[t];
      if (t == 0) break;
    }
    if (c) out.insert(s);
  }
  return out;
}

void expect_same_function(const BooleanFunction& f, const std::vector<std::uint8_t>& table) {
  ASSERT_EQ(f.truth_table().size(), table.size());
  for (std::size_t a = 0; a < table.size(); ++a) EXPECT_EQ(f.eval(a), table[a]) << a;
}

TEST(Parse, OperatorsAgainstOracleTables) {
  using oracle::bit;
  const auto parties = two({"x1", "x2"}, {"y1"});
  expect_same_function(parse_expression("x1 & y1", parties),
                       oracle::table(3, [](auto a) { return bit(a, 0) & bit(a, 2); }));
  expect_same_function(parse_expression("x1 ^ x2 ^ y1", parties),
                       oracle::table(3, [](auto a) { return bit(a, 0) ^ bit(a, 1) ^ bit(a, 2); }));
  expect_same_function(parse_expression("x1 | !y1", parties),
                       oracle::table(3, [](auto a) { return bit(a, 0) | (1 - bit(a, 2)); }));
  // & binds tighter than ^, which binds tighter than |.
  expect_same_function(
      parse_expression("x1 ^ x2 & y1 | x2", parties),
      oracle::table(3, [](auto a) { return (bit(a, 0) ^ (bit(a, 1) & bit(a, 2))) | bit(a, 1); }));
  expect_same_function(parse_expression("1 ^ (x1 & 0)", parties),
                       oracle::table(3, [](auto) { return 1; }));
}

TEST(Parse, Errors) {
  const auto parties = two({"x"}, {"y"});
  EXPECT_THROW(parse_expression("x & z", parties), ParseError);
  EXPECT_THROW(parse_expression("(x & y", parties), ParseError);
  EXPECT_THROW(parse_expression("x &", parties), ParseError);
  EXPECT_THROW(parse_expression("x y", parties), ParseError);
  try {
    parse_expression("x & #", parties);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse_expression("x", two({"x"}, {"x"})), std::invalid_argument);
  EXPECT_THROW(parse_function_json("{\"expr\": \"x\"}"), std::invalid_argument);
  EXPECT_THROW(load_function_file("/nonexistent/f.json"), std::runtime_error);
}

TEST(Parse, JsonKeepsDeclarationOrder) {
  const auto f = parse_function_json(
      R"({"parties": {"zed": ["b"], "amy": ["a"]}, "expr": "a & !b"})");
  EXPECT_EQ(f.parties()[0].name, "zed");
  EXPECT_EQ(f.variable_names(), (std::vector<std::string>{"b", "a"}));
  EXPECT_EQ(f.eval(0b10), 1);
  EXPECT_EQ(f.eval(0b01), 0);
}

TEST(BooleanFunction, AssignmentLayout) {
  const auto f = load_function_file(data("eq2"));
  EXPECT_EQ(f.num_variables(), 4);
  EXPECT_EQ(f.party_mask(0), 0b0011u);
  EXPECT_EQ(f.party_mask(1), 0b1100u);
  const std::vector<std::vector<Bit>> bits = {{1, 0}, {1, 0}};
  const Assignment a = f.assignment(bits);
  EXPECT_EQ(a, 0b0101u);
  EXPECT_EQ(f.eval(a), 1);
  EXPECT_EQ(f.party_bits(a, 1), (std::vector<Bit>{1, 0}));
  const std::vector<std::vector<Bit>> bad = {{1}, {1, 0}};
  EXPECT_THROW(f.assignment(bad), std::invalid_argument);
}

TEST(Anf, MatchesMobiusOracleOnRandomFunctions) {
  Rng rng(77);
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::string> a, b;
    for (int k = 0; k < n; ++k) (k % 2 ? b : a).push_back("v" + std::to_string(k));
    if (b.empty()) b.push_back("w");
    const int total = static_cast<int>(a.size() + b.size());
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Bit> table(std::size_t{1} << total);
      for (auto& t : table) t = rng.bit();
      const BooleanFunction f(two(a, b), table);
      const Anf anf = to_anf(f);
      const auto got = std::set<Monomial>(anf.monomials().begin(), anf.monomials().end());
      EXPECT_EQ(got, oracle_anf(table));
      for (Assignment x = 0; x < table.size(); ++x) EXPECT_EQ(anf.eval(x), table[x]);
    }
  }
}

TEST(Anf, RenderingAndNamedEvaluation) {
  const auto f = parse_expression("x1 ^ x1 & y1 ^ 1", two({"x1"}, {"y1"}));
  const Anf anf = to_anf(f);
  EXPECT_EQ(anf.monomials().size(), 3u);
  EXPECT_EQ(eval_anf(anf, std::map<std::string, Bit>{{"x1", 1}, {"y1", 1}}), 1);
  EXPECT_EQ(eval_anf(anf, std::map<std::string, Bit>{{"x1", 1}, {"y1", 0}}), 0);
  EXPECT_THROW(eval_anf(anf, std::map<std::string, Bit>{{"x1", 1}}), std::invalid_argument);
  EXPECT_TRUE(Anf::constant({"x"}, 0).is_zero());
  EXPECT_EQ(monomial_str(0, {"x"}), "1");
}

void expect_decomposition_exact(const BooleanFunction& f, const Decomposition& d) {
  for (Assignment a = 0; a < f.truth_table().size(); ++a) {
    EXPECT_EQ(d.evaluate(a), f.eval(a)) << a;
  }
  for (const auto& t : d.terms) {
    EXPECT_EQ(t.p.support() & ~d.alice_mask, 0u);
    EXPECT_EQ(t.q.support() & ~d.bob_mask, 0u);
  }
}

TEST(InnerProduct, KnownTermCounts) {
  const std::vector<std::pair<std::string, std::size_t>> cases = {
      {"and", 1}, {"xor", 2}, {"eq2", 4}};
  for (const auto& [name, m] : cases) {
    const auto f = load_function_file(data(name));
    const auto d = inner_product_decomposition(f);
    EXPECT_EQ(d.m(), m) << name;
    expect_decomposition_exact(f, d);
  }
  const auto maj = load_function_file(data("maj3"));
  expect_decomposition_exact(maj, inner_product_decomposition(maj));
}

TEST(InnerProduct, RandomFunctionsAreReproduced) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Bit> table(32);
    for (auto& t : table) t = rng.bit();
    const BooleanFunction f(two({"a", "b", "c"}, {"d", "e"}), table);
    const auto d = inner_product_decomposition(f);
    expect_decomposition_exact(f, d);
    EXPECT_LE(d.m(), 8u);  // one term per Alice monomial at most
  }
}

TEST(InnerProduct, ArityChecks) {
  const auto d = inner_product_decomposition(load_function_file(data("eq2")));
  EXPECT_EQ(d.alice_arity(), 2u);
  EXPECT_EQ(d.bob_arity(), 2u);
  const std::vector<Bit> x = {1, 0}, y = {1};
  EXPECT_THROW(d.assignment(x, y), std::invalid_argument);
  EXPECT_THROW(inner_product_decomposition(load_function_file(data("xyz"))),
               std::invalid_argument);
}

void expect_form_exact(const BooleanFunction& f, const Degree2Form& form) {
  for (Assignment a = 0; a < f.truth_table().size(); ++a) {
    EXPECT_EQ(form.evaluate(a), f.eval(a)) << a;
  }
  for (const auto& [pair, terms] : form.buckets) {
    EXPECT_GT(pair.first, pair.second);
    for (const auto& t : terms) {
      EXPECT_EQ(t.high.support() & ~form.party_masks[pair.first], 0u);
      EXPECT_EQ(t.low.support() & ~form.party_masks[pair.second], 0u);
    }
  }
}

TEST(Degree2, PairwiseFunctionsFillEveryBucket) {
  for (const auto& [name, n] : std::vector<std::pair<std::string, int>>{{"pairwise3", 3},
                                                                        {"pairwise4", 4}}) {
    const auto f = load_function_file(data(name));
    const auto form = degree2_decomposition(f, n);
    expect_form_exact(f, form);
    for (int j1 = 0; j1 < n; ++j1) {
      for (int j2 = 0; j2 < j1; ++j2) {
        EXPECT_EQ(form.lambda(j1, j2), 1);
        EXPECT_EQ(form.lambda(j2, j1), 1);
      }
    }
    EXPECT_EQ(form.num_terms(), static_cast<std::size_t>(n * (n - 1) / 2));
  }
}

TEST(Degree2, LocalAndConstantMonomials) {
  const auto f = parse_expression(
      "1 ^ x ^ y & z", {{"p1", {"x"}}, {"p2", {"y"}}, {"p3", {"z"}}});
  const auto form = degree2_decomposition(f, 3);
  expect_form_exact(f, form);
  EXPECT_EQ(form.lambda(2, 0), 0);
  int local = 0, constant = 0;
  for (const auto& [pair, terms] : form.buckets) {
    for (const auto& t : terms) {
      local += t.origin == TermOrigin::kLocal;
      constant += t.origin == TermOrigin::kConstant;
    }
  }
  EXPECT_EQ(local, 1);
  EXPECT_EQ(constant, 1);
  const auto l3 = load_function_file(data("local3"));
  expect_form_exact(l3, degree2_decomposition(l3, 3));
}

TEST(Degree2, ThreePartyMonomialIsRejected) {
  const auto f = load_function_file(data("xyz"));
  EXPECT_EQ(party_span(f, 0b111), 3);
  try {
    degree2_decomposition(f, 3);
    FAIL();
  } catch (const Degree2ViolationError& e) {
    EXPECT_EQ(e.monomial(), 0b111u);
    EXPECT_NE(e.rendered().find("x"), std::string::npos);
  }
  EXPECT_THROW(degree2_decomposition(f, 4), std::invalid_argument);
  EXPECT_THROW(degree2_decomposition(load_function_file(data("and")), 2),
               std::invalid_argument);
}

}  // namespace
}  // namespace ghzmpc::boolfn
