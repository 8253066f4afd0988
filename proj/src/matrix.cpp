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

#include "unopt/matrix.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "unopt/error.hpp"

namespace unopt {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::Dimension,
                std::string(what) + ": expected a non-empty square matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

ComplexMatrix identity(std::size_t dim) {
  if (dim == 0) throw Error(ErrorKind::Dimension, "identity: dim must be >= 1");
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim),
                                 static_cast<Eigen::Index>(dim));
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::Dimension, "matmul: inner dimensions " +
                                          std::to_string(a.cols()) + " and " +
                                          std::to_string(b.rows()) + " differ");
  }
  return a * b;
}

ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double unitarity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    return std::numeric_limits<double>::infinity();
  }
  const ComplexMatrix g = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
  return g.cwiseAbs().maxCoeff();
}

bool is_unitary(const ComplexMatrix& m, double tol) { return unitarity_error(m) <= tol; }

double phase_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "phase_distance");
  require_square(b, "phase_distance");
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::Dimension, "phase_distance: dimensions " +
                                          std::to_string(a.rows()) + " and " +
                                          std::to_string(b.rows()) + " differ");
  }
  const ComplexMatrix overlap = b.adjoint() * a;
  Complex t = overlap.trace();
  if (std::abs(t) < 1e-12 * static_cast<double>(a.rows())) {
    Eigen::Index r = 0, c = 0;
    overlap.cwiseAbs().maxCoeff(&r, &c);
    t = overlap(r, c);
  }
  const Complex phase = std::abs(t) > 0.0 ? t / std::abs(t) : Complex(1.0, 0.0);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

bool equal_up_to_global_phase(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  return phase_distance(a, b) <= tol;
}

ComplexMatrix haar_random_unitary(std::size_t dim, Rng& rng) {
  if (dim != 2 && dim != 4 && dim != 8) {
    throw Error(ErrorKind::Dimension,
                "haar_random_unitary: unsupported dimension " + std::to_string(dim));
  }
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix g(n, n);
  const double scale = 1.0 / std::sqrt(2.0);
  // Row-major fill order is part of the seed contract.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex(re * scale, im * scale);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

}  // namespace unopt
