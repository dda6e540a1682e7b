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

// Exact statevector engine for registers of one to five qubits.
//
// Conventions used throughout the project:
//  * qubits are addressed 0..n-1; qubit 0 is the most significant bit of
//    the amplitude index (so |q0 q1 q2> is index 4*q0 + 2*q1 + q2);
//  * a measurement outcome bit b encodes the eigenvalue (-1)^b.

#ifndef GHZMPC_QSIM_H_
#define GHZMPC_QSIM_H_

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ghzmpc/random.h"
#include "json.hpp"

namespace ghzmpc::qsim {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 5;
inline constexpr double kNormTolerance = 1e-12;

class StateVector {
 public:
  // Computational basis state |index> on `num_qubits` qubits.
  static StateVector basis(int num_qubits, std::uint32_t index = 0);
  // Throws std::invalid_argument unless the length is 2^n for n in [1, 5]
  // and the vector is normalized within kNormTolerance.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex amplitude(std::uint32_t index) const { return amplitudes_.at(index); }
  double norm_squared() const;

  // Debug dump: array of [re, im] pairs in index order.
  nlohmann::json to_json() const;

 private:
  StateVector(int num_qubits, std::vector<Complex> amplitudes)
      : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

  friend class Kernel;
  int num_qubits_;
  std::vector<Complex> amplitudes_;
};

// |<a|b>|^2; both states must have the same number of qubits.
double fidelity(const StateVector& a, const StateVector& b);

enum class Axis : std::uint8_t { kI, kX, kY, kZ };

char axis_char(Axis axis);

// Signed tensor product of single-qubit Paulis, one entry per qubit.
struct PauliString {
  int sign = 1;
  std::vector<Axis> axes;

  // Accepts an optional leading '+' or '-' followed by one of I/_, X, Y, Z
  // per qubit, e.g. "-XXZ" or "IYY".
  static PauliString parse(std::string_view text);
  // Single Pauli `axis` on `qubit` of an n-qubit register.
  static PauliString single(int num_qubits, int qubit, Axis axis);

  int num_qubits() const { return static_cast<int>(axes.size()); }
  bool is_identity() const;
  std::string str() const;
};

// The basis selected by an input bit: 0 -> Z, 1 -> X.
struct MeasurementSetting {
  Bit input_bit = 0;
  Axis axis() const { return input_bit ? Axis::kX : Axis::kZ; }
};

// (1/sqrt 2)(|y- y- y+> + |y+ y+ y->) with |y+-> = (|0> +- i|1>)/sqrt 2.
StateVector prepare_ghz();

StateVector apply_hadamard(const StateVector& state, int qubit);
// op |state>, including the sign.
StateVector apply_pauli(const StateVector& state, const PauliString& op);
// <state| op |state>.
double expectation(const StateVector& state, const PauliString& op);

// One outcome of a projective measurement: the normalized post-measurement
// state exists only when the probability is non-zero.
struct Branch {
  Bit outcome = 0;
  double probability = 0.0;
  std::optional<StateVector> state;
};

// Both eigenspace projections of `op` (outcome 0 is the +1 eigenspace).
// Throws std::invalid_argument for the identity or a size mismatch.
std::array<Branch, 2> measurement_branches(const StateVector& state,
                                           const PauliString& op);

struct MeasurementResult {
  Bit outcome;
  StateVector state;
};

// Joint measurement of a full Pauli string, outcome drawn from `chance`.
MeasurementResult measure(const StateVector& state, const PauliString& op,
                          Chance& chance);
MeasurementResult measure_joint_pauli(const StateVector& state,
                                      const PauliString& op, Rng& rng);
// Single-qubit measurement along X, Y or Z; Axis::kI is rejected.
MeasurementResult measure_pauli(const StateVector& state, int qubit, Axis axis,
                                Rng& rng);
MeasurementResult measure_pauli(const StateVector& state, int qubit, Axis axis,
                                Chance& chance);

// Removes `qubit`, which must be in a computational basis state.
StateVector discard_qubit(const StateVector& state, int qubit);

// (1 (x) 1 (x) H^(p_a xor p_b)) applied to prepare_ghz().
StateVector padded_ghz(Bit p_a, Bit p_b);

// Five-qubit purification of the pad ensemble: qubits 0 and 1 hold the pad
// bits p_a and p_b in the computational basis, qubits 2..4 hold
// padded_ghz(p_a, p_b), each branch with amplitude 1/2.
StateVector ensemble_purification();

struct PaddedEnsemble {
  Bit p_a;
  Bit p_b;
  StateVector state;  // three qubits
};

// Measures the two pad qubits of ensemble_purification() in the
// computational basis and returns the remaining three-qubit state.
PaddedEnsemble prepare_padded_ensemble(Chance& chance);
PaddedEnsemble prepare_padded_ensemble(Rng& rng);

}  // namespace ghzmpc::qsim

#endif  // GHZMPC_QSIM_H_
