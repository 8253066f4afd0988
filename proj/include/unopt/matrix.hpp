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

#include <complex>
#include <cstddef>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "unopt/rng.hpp"

namespace unopt {

using Complex = std::complex<double>;

/// Dense square complex matrix. Every unitary in the library (2x2 up to
/// 2^n x 2^n) is stored this way.
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kEqualTol = 1e-8;

ComplexMatrix identity(std::size_t dim);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& m);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |M^dagger M - I|, or infinity for non-square input.
double unitarity_error(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& m, double tol = kUnitaryTol);

/// Returns min over phi of max|a - e^{i phi} b|, with phi taken from the
/// phase of tr(b^dagger a) (largest entry of b^dagger a when the trace
/// vanishes). Throws on dimension mismatch.
double phase_distance(const ComplexMatrix& a, const ComplexMatrix& b);

bool equal_up_to_global_phase(const ComplexMatrix& a, const ComplexMatrix& b,
                              double tol = kEqualTol);

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the
/// diagonal of R folded back into Q. dim must be 2, 4 or 8.
ComplexMatrix haar_random_unitary(std::size_t dim, Rng& rng);

}  // namespace unopt
