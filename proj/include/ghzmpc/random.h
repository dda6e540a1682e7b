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

#ifndef GHZMPC_RANDOM_H_
#define GHZMPC_RANDOM_H_

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghzmpc {

using Bit = std::uint8_t;

// Seeded source used everywhere a simulation needs randomness. Draws are
// derived from raw 64-bit words so sequences are identical across standard
// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  Bit bit() { return static_cast<Bit>(engine_() >> 63); }
  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  Bit bernoulli(double p_one) { return uniform() < p_one ? 1 : 0; }

 private:
  std::mt19937_64 engine_;
};

// What a random decision stands for. Enumeration can be restricted to a
// subset of kinds; the rest are then sampled.
enum class ChoiceKind : std::uint8_t {
  kSharedBit,
  kPad,
  kTester,
  kMeasurement,
};

// Probabilities closer than this to 0 or 1 are treated as deterministic.
inline constexpr double kCertaintyEpsilon = 1e-12;

// Source of every random decision made by a protocol run. Implementations
// either sample (SamplingChance) or replay one branch of an exhaustive
// enumeration (see explore_branches).
class Chance {
 public:
  virtual ~Chance() = default;
  // Returns 1 with probability `p_one`.
  virtual Bit draw(ChoiceKind kind, double p_one) = 0;
  Bit fair_bit(ChoiceKind kind) { return draw(kind, 0.5); }
};

class SamplingChance final : public Chance {
 public:
  explicit SamplingChance(Rng& rng) : rng_(rng) {}
  Bit draw(ChoiceKind kind, double p_one) override;

 private:
  Rng& rng_;
};

class EnumerationLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BranchOptions {
  std::uint64_t max_leaves = std::uint64_t{1} << 24;
  // Kinds enumerated exhaustively; an empty filter enumerates everything.
  std::function<bool(ChoiceKind)> enumerate_kind;
  // Seed for kinds that are sampled instead of enumerated. Every leaf
  // restarts the sampler from this seed.
  std::uint64_t sample_seed = 0;
};

// Runs `body` once per leaf of the tree of random decisions it makes,
// replaying the decision prefix each time. `body` must be deterministic
// given its draws. `on_leaf` receives the probability of the branch just
// run. Returns the number of leaves. Throws EnumerationLimitError when more
// than `max_leaves` leaves exist.
std::uint64_t explore_branches(const std::function<void(Chance&)>& body,
                               const std::function<void(double)>& on_leaf,
                               const BranchOptions& options = {});

// Convenience wrapper collecting `body`'s return value per leaf.
template <typename Result>
std::vector<std::pair<double, Result>> enumerate_branches(
    const std::function<Result(Chance&)>& body,
    const BranchOptions& options = {}) {
  std::vector<std::pair<double, Result>> leaves;
  Result current{};
  explore_branches([&](Chance& chance) { current = body(chance); },
                   [&](double p) { leaves.emplace_back(p, std::move(current)); },
                   options);
  return leaves;
}

}  // namespace ghzmpc

#endif  // GHZMPC_RANDOM_H_
