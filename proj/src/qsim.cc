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

#include "ghzmpc/qsim.h"

#include <cmath>
#include <stdexcept>

namespace ghzmpc::qsim {

// Grants the free functions below access to the amplitude storage without
// widening StateVector's public surface.
class Kernel {
 public:
  static StateVector make(int n, std::vector<Complex> amplitudes) {
    return StateVector(n, std::move(amplitudes));
  }
  static std::vector<Complex>& amps(StateVector& s) { return s.amplitudes_; }
};

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
const Complex kI(0.0, 1.0);

void check_qubit(const StateVector& state, int qubit) {
  if (qubit < 0 || qubit >= state.num_qubits()) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) +
                            " out of range for " +
                            std::to_string(state.num_qubits()) + "-qubit state");
  }
}

std::uint32_t bit_mask(int num_qubits, int qubit) {
  return std::uint32_t{1} << (num_qubits - 1 - qubit);
}

void check_op(const StateVector& state, const PauliString& op) {
  if (op.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("Pauli string " + op.str() + " does not act on " +
                                std::to_string(state.num_qubits()) + " qubits");
  }
}

StateVector normalized(int n, std::vector<Complex> amps) {
  double total = 0;
  for (const auto& a : amps) total += std::norm(a);
  const double scale = 1.0 / std::sqrt(total);
  for (auto& a : amps) a *= scale;
  return Kernel::make(n, std::move(amps));
}

}  // namespace

StateVector StateVector::basis(int num_qubits, std::uint32_t index) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("register size must be in [1, 5]");
  }
  std::vector<Complex> amps(std::size_t{1} << num_qubits);
  if (index >= amps.size()) throw std::invalid_argument("basis index out of range");
  amps[index] = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  int n = 0;
  while ((std::size_t{1} << n) < amplitudes.size()) ++n;
  if (n < 1 || n > kMaxQubits || (std::size_t{1} << n) != amplitudes.size()) {
    throw std::invalid_argument("amplitude count must be 2^n with n in [1, 5]");
  }
  StateVector s(n, std::move(amplitudes));
  if (std::abs(s.norm_squared() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state is not normalized");
  }
  return s;
}

double StateVector::norm_squared() const {
  double total = 0;
  for (const auto& a : amplitudes_) total += std::norm(a);
  return total;
}

nlohmann::json StateVector::to_json() const {
  auto out = nlohmann::json::array();
  for (const auto& a : amplitudes_) out.push_back({a.real(), a.imag()});
  return out;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("fidelity: register sizes differ");
  }
  Complex overlap = 0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    overlap += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  }
  return std::norm(overlap);
}

char axis_char(Axis axis) {
  switch (axis) {
    case Axis::kI: return 'I';
    case Axis::kX: return 'X';
    case Axis::kY: return 'Y';
    case Axis::kZ: return 'Z';
  }
  return '?';
}

PauliString PauliString::parse(std::string_view text) {
  PauliString op;
  std::size_t pos = 0;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    op.sign = text[0] == '-' ? -1 : 1;
    pos = 1;
  }
  for (; pos < text.size(); ++pos) {
    switch (text[pos]) {
      case 'I': case '_': op.axes.push_back(Axis::kI); break;
      case 'X': op.axes.push_back(Axis::kX); break;
      case 'Y': op.axes.push_back(Axis::kY); break;
      case 'Z': op.axes.push_back(Axis::kZ); break;
      default:
        throw std::invalid_argument("bad Pauli character in '" +
                                    std::string(text) + "'");
    }
  }
  if (op.axes.empty()) throw std::invalid_argument("empty Pauli string");
  return op;
}

PauliString PauliString::single(int num_qubits, int qubit, Axis axis) {
  if (qubit < 0 || qubit >= num_qubits) {
    throw std::out_of_range("qubit index out of range");
  }
  PauliString op;
  op.axes.assign(num_qubits, Axis::kI);
  op.axes[qubit] = axis;
  return op;
}

bool PauliString::is_identity() const {
  for (Axis a : axes) {
    if (a != Axis::kI) return false;
  }
  return true;
}

std::string PauliString::str() const {
  std::string out(1, sign < 0 ? '-' : '+');
  for (Axis a : axes) out.push_back(axis_char(a));
  return out;
}

StateVector prepare_ghz() {
  const std::array<Complex, 2> y_plus = {kInvSqrt2, kInvSqrt2 * kI};
  const std::array<Complex, 2> y_minus = {kInvSqrt2, -kInvSqrt2 * kI};
  std::vector<Complex> amps(8);
  for (std::uint32_t i = 0; i < 8; ++i) {
    const int b0 = (i >> 2) & 1, b1 = (i >> 1) & 1, b2 = i & 1;
    amps[i] = kInvSqrt2 * (y_minus[b0] * y_minus[b1] * y_plus[b2] +
                            y_plus[b0] * y_plus[b1] * y_minus[b2]);
  }
  return Kernel::make(3, std::move(amps));
}

StateVector apply_hadamard(const StateVector& state, int qubit) {
  check_qubit(state, qubit);
  const std::uint32_t m = bit_mask(state.num_qubits(), qubit);
  std::vector<Complex> out(state.dimension());
  const auto in = state.amplitudes();
  for (std::uint32_t i = 0; i < state.dimension(); ++i) {
    if (i & m) continue;
    const Complex a0 = in[i], a1 = in[i | m];
    out[i] = kInvSqrt2 * (a0 + a1);
    out[i | m] = kInvSqrt2 * (a0 - a1);
  }
  return Kernel::make(state.num_qubits(), std::move(out));
}

StateVector apply_pauli(const StateVector& state, const PauliString& op) {
  check_op(state, op);
  const int n = state.num_qubits();
  std::uint32_t flip = 0;
  for (int q = 0; q < n; ++q) {
    if (op.axes[q] == Axis::kX || op.axes[q] == Axis::kY) flip |= bit_mask(n, q);
  }
  std::vector<Complex> out(state.dimension());
  const auto in = state.amplitudes();
  for (std::uint32_t i = 0; i < state.dimension(); ++i) {
    Complex phase = static_cast<double>(op.sign);
    for (int q = 0; q < n; ++q) {
      const bool one = i & bit_mask(n, q);
      switch (op.axes[q]) {
        case Axis::kZ: if (one) phase = -phase; break;
        // Y|0> = i|1>, Y|1> = -i|0>.
        case Axis::kY: phase *= one ? -kI : kI; break;
        default: break;
      }
    }
    out[i ^ flip] = phase * in[i];
  }
  return Kernel::make(n, std::move(out));
}

double expectation(const StateVector& state, const PauliString& op) {
  const StateVector applied = apply_pauli(state, op);
  Complex total = 0;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    total += std::conj(state.amplitudes()[i]) * applied.amplitudes()[i];
  }
  return total.real();
}

std::array<Branch, 2> measurement_branches(const StateVector& state,
                                           const PauliString& op) {
  check_op(state, op);
  if (op.is_identity()) {
    throw std::invalid_argument("cannot measure the identity operator");
  }
  const StateVector applied = apply_pauli(state, op);
  std::array<Branch, 2> branches;
  for (Bit outcome : {Bit{0}, Bit{1}}) {
    const double s = outcome ? -1.0 : 1.0;
    std::vector<Complex> projected(state.dimension());
    double p = 0;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
      projected[i] = 0.5 * (state.amplitudes()[i] + s * applied.amplitudes()[i]);
      p += std::norm(projected[i]);
    }
    branches[outcome].outcome = outcome;
    branches[outcome].probability = p;
    if (p > kCertaintyEpsilon) {
      branches[outcome].state = normalized(state.num_qubits(), std::move(projected));
    }
  }
  return branches;
}

MeasurementResult measure(const StateVector& state, const PauliString& op,
                          Chance& chance) {
  auto branches = measurement_branches(state, op);
  const double p_one =
      branches[1].probability / (branches[0].probability + branches[1].probability);
  Bit outcome = chance.draw(ChoiceKind::kMeasurement, p_one);
  if (!branches[outcome].state) outcome ^= 1;
  return {outcome, std::move(*branches[outcome].state)};
}

MeasurementResult measure_joint_pauli(const StateVector& state,
                                      const PauliString& op, Rng& rng) {
  SamplingChance chance(rng);
  return measure(state, op, chance);
}

MeasurementResult measure_pauli(const StateVector& state, int qubit, Axis axis,
                                Chance& chance) {
  check_qubit(state, qubit);
  if (axis == Axis::kI) {
    throw std::invalid_argument("measurement basis must be X, Y or Z");
  }
  return measure(state, PauliString::single(state.num_qubits(), qubit, axis),
                 chance);
}

MeasurementResult measure_pauli(const StateVector& state, int qubit, Axis axis,
                                Rng& rng) {
  SamplingChance chance(rng);
  return measure_pauli(state, qubit, axis, chance);
}

StateVector discard_qubit(const StateVector& state, int qubit) {
  check_qubit(state, qubit);
  const int n = state.num_qubits();
  if (n == 1) throw std::invalid_argument("cannot discard the only qubit");
  const std::uint32_t m = bit_mask(n, qubit);
  double p_one = 0;
  for (std::uint32_t i = 0; i < state.dimension(); ++i) {
    if (i & m) p_one += std::norm(state.amplitudes()[i]);
  }
  std::uint32_t value;
  if (p_one <= kNormTolerance) {
    value = 0;
  } else if (p_one >= 1.0 - kNormTolerance) {
    value = m;
  } else {
    throw std::invalid_argument("discarded qubit is entangled or in superposition");
  }
  std::vector<Complex> out(state.dimension() / 2);
  const std::uint32_t low = m - 1;
  for (std::uint32_t j = 0; j < out.size(); ++j) {
    const std::uint32_t i = ((j & ~low) << 1) | value | (j & low);
    out[j] = state.amplitudes()[i];
  }
  return normalized(n - 1, std::move(out));
}

StateVector padded_ghz(Bit p_a, Bit p_b) {
  StateVector ghz = prepare_ghz();
  return (p_a ^ p_b) ? apply_hadamard(ghz, 2) : ghz;
}

StateVector ensemble_purification() {
  std::vector<Complex> amps(32);
  for (Bit p_a : {Bit{0}, Bit{1}}) {
    for (Bit p_b : {Bit{0}, Bit{1}}) {
      const StateVector core = padded_ghz(p_a, p_b);
      const std::uint32_t prefix = (std::uint32_t{p_a} << 4) | (std::uint32_t{p_b} << 3);
      for (std::uint32_t i = 0; i < 8; ++i) {
        amps[prefix | i] = 0.5 * core.amplitudes()[i];
      }
    }
  }
  return Kernel::make(5, std::move(amps));
}

PaddedEnsemble prepare_padded_ensemble(Chance& chance) {
  auto pad_a = measure_pauli(ensemble_purification(), 0, Axis::kZ, chance);
  auto pad_b = measure_pauli(pad_a.state, 1, Axis::kZ, chance);
  StateVector rest = discard_qubit(discard_qubit(pad_b.state, 1), 0);
  return {pad_a.outcome, pad_b.outcome, std::move(rest)};
}

PaddedEnsemble prepare_padded_ensemble(Rng& rng) {
  SamplingChance chance(rng);
  return prepare_padded_ensemble(chance);
}

}  // namespace ghzmpc::qsim
