// Copyright 2026 The Unopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Shared helpers for the test suites. Everything here is independent of the
// code paths under test: dense products are built from explicit Kronecker
// products and permutation matrices rather than the library's embed().

#include <cstddef>
#include <vector>

#include "unopt/circuit.hpp"
#include "unopt/matrix.hpp"
#include "unopt/rng.hpp"

namespace unopt::testing {

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline ComplexMatrix hadamard() {
  ComplexMatrix m(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  m << r, r, r, -r;
  return m;
}

/// Permutation operator on n qubits sending basis state b to the state whose
/// qubit perm[k] equals bit k of b.
inline ComplexMatrix qubit_permutation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix p = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    std::size_t out = 0;
    for (int k = 0; k < n; ++k) {
      if ((b >> k) & 1U) out |= std::size_t{1} << perm[static_cast<std::size_t>(k)];
    }
    p(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(b)) = 1.0;
  }
  return p;
}

/// Reference embedding: kron(M, I) acts on the top qubits n-1 .. n-m with the
/// gate's first qubit on qubit n-1; a permutation then routes those slots to
/// the gate's actual qubits.
inline ComplexMatrix reference_embed(const Gate& g, int n) {
  const int m = static_cast<int>(g.arity());
  ComplexMatrix top = kron(g.matrix, identity(std::size_t{1} << (n - m)));
  // slot k (bit position of the kron layout) -> physical qubit
  std::vector<int> perm(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int i = 0; i < m; ++i) {
    perm[static_cast<std::size_t>(n - 1 - i)] = g.qubits[static_cast<std::size_t>(i)];
    used[static_cast<std::size_t>(g.qubits[static_cast<std::size_t>(i)])] = true;
  }
  int next = 0;
  for (int k = 0; k < n - m; ++k) {
    while (used[static_cast<std::size_t>(next)]) ++next;
    perm[static_cast<std::size_t>(k)] = next;
    used[static_cast<std::size_t>(next)] = true;
  }
  const ComplexMatrix p = qubit_permutation(perm);
  return p * top * p.adjoint();
}

inline ComplexMatrix reference_unitary(const Circuit& c) {
  ComplexMatrix u = identity(std::size_t{1} << c.n_qubits());
  for (const Gate& g : c.gates()) u = reference_embed(g, c.n_qubits()) * u;
  return u;
}

inline Gate random_gate(std::vector<Qubit> qubits, Rng& rng, std::string label = "G") {
  const std::size_t dim = std::size_t{1} << qubits.size();
  return make_gate(std::move(qubits), haar_random_unitary(dim, rng), std::move(label));
}

}  // namespace unopt::testing
