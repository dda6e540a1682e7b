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

#include "ghzmpc/random.h"

#include <stdexcept>

namespace ghzmpc {

Bit SamplingChance::draw(ChoiceKind /*kind*/, double p_one) {
  if (p_one <= kCertaintyEpsilon) return 0;
  if (p_one >= 1.0 - kCertaintyEpsilon) return 1;
  return rng_.bernoulli(p_one);
}

namespace {

struct Decision {
  ChoiceKind kind;
  Bit chosen;
};

// Replays a recorded prefix of decisions, then extends it with the
// 0-branch of every new decision.
class ReplayChance final : public Chance {
 public:
  ReplayChance(std::vector<Decision>& stack, const BranchOptions& options)
      : stack_(stack), options_(options), sampler_rng_(options.sample_seed),
        sampler_(sampler_rng_) {}

  Bit draw(ChoiceKind kind, double p_one) override {
    if (options_.enumerate_kind && !options_.enumerate_kind(kind)) {
      return sampler_.draw(kind, p_one);
    }
    if (p_one <= kCertaintyEpsilon) return 0;
    if (p_one >= 1.0 - kCertaintyEpsilon) return 1;
    Bit chosen = 0;
    if (depth_ < stack_.size()) {
      if (stack_[depth_].kind != kind) {
        throw std::logic_error("explore_branches: body is not deterministic");
      }
      chosen = stack_[depth_].chosen;
    } else {
      stack_.push_back({kind, 0});
    }
    ++depth_;
    probability_ *= chosen ? p_one : 1.0 - p_one;
    return chosen;
  }

  std::size_t depth() const { return depth_; }
  double probability() const { return probability_; }

 private:
  std::vector<Decision>& stack_;
  const BranchOptions& options_;
  Rng sampler_rng_;
  SamplingChance sampler_;
  std::size_t depth_ = 0;
  double probability_ = 1.0;
};

}  // namespace

std::uint64_t explore_branches(const std::function<void(Chance&)>& body,
                               const std::function<void(double)>& on_leaf,
                               const BranchOptions& options) {
  std::vector<Decision> stack;
  std::uint64_t leaves = 0;
  while (true) {
    if (leaves >= options.max_leaves) {
      throw EnumerationLimitError("branch enumeration exceeded " +
                                  std::to_string(options.max_leaves) +
                                  " leaves");
    }
    ReplayChance chance(stack, options);
    body(chance);
    if (chance.depth() != stack.size()) {
      throw std::logic_error("explore_branches: body is not deterministic");
    }
    ++leaves;
    on_leaf(chance.probability());
    while (!stack.empty() && stack.back().chosen == 1) stack.pop_back();
    if (stack.empty()) break;
    stack.back().chosen = 1;
  }
  return leaves;
}

}  // namespace ghzmpc
