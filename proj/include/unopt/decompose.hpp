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
#include <span>
#include <utility>
#include <vector>

#include "unopt/circuit.hpp"
#include "unopt/matrix.hpp"

namespace unopt {

/// Angles (theta, phi, lambda) with m == e^{i alpha} U3(theta, phi, lambda).
std::array<double, 3> u3_angles(const ComplexMatrix& m);
/// U3 gate equal to the 2x2 unitary `m` up to global phase.
Gate to_u3(Qubit q, const ComplexMatrix& m);

/// Splits a 4x4 tensor product into m = high (x) low. `high` acts on the
/// most significant qubit. Throws if m is not a product within 1e-9.
std::pair<ComplexMatrix, ComplexMatrix> factor_kron(const ComplexMatrix& m);

/// The magic (Bell-type) basis used for the Cartan decomposition; columns are basis vectors.
const ComplexMatrix& magic_basis();

/// exp(i (x XX + y YY + z ZZ)).
ComplexMatrix canonical_gate(double x, double y, double z);

/// u == phase * (k1_high (x) k1_low) * canonical_gate(coords) * (k2_high (x) k2_low).
/// Coordinates are reduced to (-pi/4, pi/4]; the reduction's Pauli factors
/// are folded into k1.
struct CartanFactors {
  ComplexMatrix k1_high, k1_low;
  std::array<double, 3> coords{};
  ComplexMatrix k2_high, k2_low;
  Complex phase{1.0, 0.0};
};

CartanFactors cartan_decompose(const ComplexMatrix& u);

/// Minimum CX count (0..3) implied by reduced canonical coordinates.
int cx_count_for(const std::array<double, 3>& coords, double tol = 1e-9);

struct KakResult {
  std::vector<Gate> gates;  // labelled "U3" or "CX"
  int cx_count = 0;
};

/// Two-qubit gate in the {U3, CX} basis with the minimum number of CX.
/// `qubits` is (most significant, least significant).
KakResult kak_decompose(const ComplexMatrix& u, std::array<Qubit, 2> qubits);

/// u == diag(l0, l1) * CS(theta) * diag(r0, r1) with
/// CS = [[diag cos, -diag sin], [diag sin, diag cos]], theta ascending in [0, pi/2].
struct CosineSine {
  ComplexMatrix l0, l1;
  Eigen::VectorXd theta;
  ComplexMatrix r0, r1;
};

CosineSine cosine_sine_decompose(const ComplexMatrix& u);
ComplexMatrix cs_matrix(const Eigen::VectorXd& theta);
ComplexMatrix reconstruct(const CosineSine& csd);

/// diag(u0, u1) == (I (x) v) * diag(d, conj(d)) * (I (x) w).
struct Demultiplexed {
  ComplexMatrix v;
  Eigen::VectorXcd d;
  ComplexMatrix w;
};

Demultiplexed demultiplex(const ComplexMatrix& u0, const ComplexMatrix& u1);

enum class RotationAxis { Y, Z };

/// Uniformly controlled rotation: for control value j (first control most
/// significant) the target receives R_axis(angles[j]). Emits 2^c rotations
/// and 2^c CX gates.
std::vector<Gate> multiplexed_rotation(RotationAxis axis, std::span<const double> angles,
                                       std::span<const Qubit> controls, Qubit target);

struct ThreeQubitDecomposition {
  std::vector<Gate> gates;  // every gate acts on at most two qubits
  std::size_t gate_count = 0;
};

/// Cosine-sine split on the first qubit, demultiplexed outer blocks, then
/// regrouped into two-qubit blocks.
ThreeQubitDecomposition decompose_three_qubit(const ComplexMatrix& u,
                                              std::array<Qubit, 3> qubits);

/// Rewrites every gate in the {U3, CX} basis. Runs of single-qubit gates on a
/// wire are fused into one U3. Gates of arity 3 are rejected.
Circuit to_u3cx_basis(const Circuit& c);

}  // namespace unopt
