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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unopt/matrix.hpp"
#include "unopt/rng.hpp"

namespace unopt {

using Qubit = int;

// Basis convention used everywhere: bit k of a global basis index is the
// state of qubit k (little-endian). Inside a gate on ordered qubits
// (t0, ..., t_{m-1}) the local index has t0 as its most significant bit.
// Circuits apply gates left to right, so the circuit operator is
// E(g_last) ... E(g_first).

struct Gate {
  std::vector<Qubit> qubits;
  ComplexMatrix matrix;
  std::string label;
  /// (theta, phi, lambda) when the gate is a U3 with known angles.
  std::optional<std::array<double, 3>> params;

  std::size_t arity() const { return qubits.size(); }
  bool acts_on(Qubit q) const;
};

/// Validates arity (1..3), distinct qubits, matrix shape and unitarity.
Gate make_gate(std::vector<Qubit> qubits, ComplexMatrix matrix, std::string label = {});

ComplexMatrix u3_matrix(double theta, double phi, double lambda);
Gate u3_gate(Qubit q, double theta, double phi, double lambda);
/// CX with the first qubit as control.
Gate cx_gate(Qubit control, Qubit target);
ComplexMatrix cx_matrix();

/// Gate with the adjoint matrix on the same qubits.
Gate inverse(const Gate& g);

class Circuit {
 public:
  explicit Circuit(int n_qubits);
  Circuit(int n_qubits, std::vector<Gate> gates);

  int n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  const Gate& operator[](std::size_t i) const { return gates_[i]; }

  /// Throws when the gate touches a qubit outside [0, n_qubits).
  void append(Gate g);

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
};

/// Gate-wise adjoints in reverse order.
Circuit inverse(const Circuit& c);
/// Gates of `first` followed by gates of `second`.
Circuit concat(const Circuit& first, const Circuit& second);

/// Length of the longest chain of gates that pairwise share a qubit.
int depth(const Circuit& c);

/// Random circuit of Haar two-qubit gates on uniformly random qubit pairs.
/// Gates that would push the depth past `target_depth` are rejected and
/// resampled; generation stops once no pair can take another gate, so the
/// result has depth exactly `target_depth`.
Circuit random_circuit(int n_qubits, int target_depth, Rng& rng);

/// Places `m` (acting on `gate_qubits`, first qubit most significant) into
/// the operator space of the ordered qubit list `support` (first entry most
/// significant).
ComplexMatrix embed_local(const ComplexMatrix& m, std::span<const Qubit> gate_qubits,
                          std::span<const Qubit> support);

/// 2^n x 2^n operator of `g` under the little-endian global convention.
ComplexMatrix embed(const Gate& g, int n_qubits);

inline constexpr int kDenseQubitLimit = 12;

/// Dense operator of the whole circuit. Throws a resource error above `max_qubits`.
ComplexMatrix full_unitary(const Circuit& c, int max_qubits = kDenseQubitLimit);

/// Ordered product of `gates` on the qubit list `support` (first entry most significant).
ComplexMatrix local_unitary(std::span<const Gate> gates, std::span<const Qubit> support);

/// Applies `g` to a 2^n amplitude buffer in place.
void apply_gate(std::span<Complex> amplitudes, int n_qubits, const Gate& g);

}  // namespace unopt
