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

// Reference computations used by the tests. None of them go through the
// library code they check: states are built from their definitions and
// operators as dense Kronecker products.

#ifndef GHZMPC_TESTS_ORACLES_H_
#define GHZMPC_TESTS_ORACLES_H_

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Matrix = std::vector<std::vector<C>>;
using Vector = std::vector<C>;

inline Matrix pauli(char axis) {
  const C i(0, 1);
  switch (axis) {
    case 'X': return {{0, 1}, {1, 0}};
    case 'Y': return {{0, -i}, {i, 0}};
    case 'Z': return {{1, 0}, {0, -1}};
    default: return {{1, 0}, {0, 1}};
  }
}

inline Matrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return {{s, s}, {s, -s}};
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), m = b.size();
  Matrix out(n * m, std::vector<C>(n * m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) out[i * m + k][j * m + l] = a[i][j] * b[k][l];
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out;
  for (const C& x : a)
    for (const C& y : b) out.push_back(x * y);
  return out;
}

// "-XXZ" as a dense matrix; the first letter acts on the most significant
// bit of the basis index.
inline Matrix pauli_string(const std::string& text) {
  double sign = 1.0;
  std::size_t start = 0;
  if (text[0] == '-' || text[0] == '+') {
    sign = text[0] == '-' ? -1.0 : 1.0;
    start = 1;
  }
  Matrix out = {{sign}};
  for (std::size_t k = start; k < text.size(); ++k) out = kron(out, pauli(text[k]));
  return out;
}

// Single-qubit gate on `qubit` of an n-qubit register.
inline Matrix on_qubit(const Matrix& gate, int qubit, int n) {
  Matrix out = {{1}};
  for (int q = 0; q < n; ++q) out = kron(out, q == qubit ? gate : pauli('I'));
  return out;
}

inline Vector apply(const Matrix& m, const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline C inner(const Vector& a, const Vector& b) {
  C s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double expectation(const Vector& v, const std::string& op) {
  return inner(v, oracle::apply(pauli_string(op), v)).real();
}

// (|y-y-y+> + |y+y+y->)/sqrt(2), |y+-> = (|0> +- i|1>)/sqrt(2).
inline Vector ghz() {
  const double s = 1.0 / std::sqrt(2.0);
  const Vector yp{s, C(0, s)};
  const Vector ym{s, C(0, -s)};
  const Vector a = kron(kron(ym, ym), yp);
  const Vector b = kron(kron(yp, yp), ym);
  Vector out(8);
  for (int i = 0; i < 8; ++i) out[i] = s * (a[i] + b[i]);
  return out;
}

// Probability of each outcome string m1 m2 m3 when qubit k is measured in
// basis axes[k], from the projector (I + (-1)^m P)/2 products.
inline std::vector<double> joint_outcome_distribution(const Vector& state,
                                                      const std::string& axes) {
  const int n = static_cast<int>(axes.size());
  std::vector<double> out(1u << n, 0.0);
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    Vector v = state;
    for (int k = 0; k < n; ++k) {
      const Matrix p = on_qubit(pauli(axes[k]), k, n);
      const double sgn = ((m >> (n - 1 - k)) & 1) ? -1.0 : 1.0;
      Vector pv = oracle::apply(p, v);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * (v[i] + sgn * pv[i]);
    }
    out[m] = inner(v, v).real();
  }
  return out;
}

// Truth table of `f` over n variables, index bit k = variable k.
inline std::vector<std::uint8_t> table(int n, const std::function<int(std::uint32_t)>& f) {
  std::vector<std::uint8_t> out(1u << n);
  for (std::uint32_t a = 0; a < (1u << n); ++a) out[a] = static_cast<std::uint8_t>(f(a) & 1);
  return out;
}

inline int bit(std::uint32_t a, int k) { return (a >> k) & 1; }

}  // namespace oracle

#endif  // GHZMPC_TESTS_ORACLES_H_
