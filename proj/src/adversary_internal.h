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

#ifndef GHZMPC_SRC_ADVERSARY_INTERNAL_H_
#define GHZMPC_SRC_ADVERSARY_INTERNAL_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ghzmpc/adversary.h"

namespace ghzmpc::adversary::internal {

// Split of a two-party decomposition's variables into coalition-owned and
// honest ones. Bit i of a coalition (honest) assignment is the i-th
// coalition (honest) variable in declaration order.
class TwoPartyLayout {
 public:
  TwoPartyLayout(const boolfn::Decomposition& decomp, const Coalition& coalition);

  const std::vector<int>& coalition_vars() const { return coalition_vars_; }
  const std::vector<int>& honest_vars() const { return honest_vars_; }
  std::vector<std::string> honest_names() const;
  std::uint32_t honest_assignments() const { return 1u << honest_vars_.size(); }

  void split(std::uint32_t coalition_bits, std::uint32_t honest_bits, std::vector<Bit>& x,
             std::vector<Bit>& y) const;

  // P(view | honest inputs) for every honest assignment.
  std::vector<std::map<std::string, double>> view_likelihoods(
      const protocol::SchemeConfig& config, const Coalition& coalition,
      std::uint32_t coalition_bits) const;
  // Same for the ideal view: the output if `learns`, otherwise nothing.
  std::vector<std::map<std::string, double>> ideal_likelihoods(
      bool learns, std::uint32_t coalition_bits) const;

 private:
  const boolfn::Decomposition& decomp_;
  std::vector<int> coalition_vars_;
  std::vector<int> honest_vars_;
};

}  // namespace ghzmpc::adversary::internal

#endif  // GHZMPC_SRC_ADVERSARY_INTERNAL_H_
