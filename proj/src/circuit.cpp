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

#include "unopt/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "unopt/error.hpp"

namespace unopt {

bool Gate::acts_on(Qubit q) const {
  return std::find(qubits.begin(), qubits.end(), q) != qubits.end();
}

Gate make_gate(std::vector<Qubit> qubits, ComplexMatrix matrix, std::string label) {
  if (qubits.empty() || qubits.size() > 3) {
    throw Error(ErrorKind::Validation,
                "gate arity must be 1..3, got " + std::to_string(qubits.size()));
  }
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] < 0) throw Error(ErrorKind::Validation, "negative qubit index");
    for (std::size_t j = i + 1; j < qubits.size(); ++j) {
      if (qubits[i] == qubits[j]) {
        throw Error(ErrorKind::Validation,
                    "repeated qubit " + std::to_string(qubits[i]) + " in gate");
      }
    }
  }
  const Eigen::Index dim = Eigen::Index{1} << qubits.size();
  if (matrix.rows() != dim || matrix.cols() != dim) {
    throw Error(ErrorKind::Dimension, "gate on " + std::to_string(qubits.size()) +
                                          " qubits needs a " + std::to_string(dim) +
                                          "x" + std::to_string(dim) + " matrix");
  }
  if (!is_unitary(matrix)) {
    throw Error(ErrorKind::Validation, "gate matrix is not unitary (error " +
                                           std::to_string(unitarity_error(matrix)) + ")");
  }
  return Gate{std::move(qubits), std::move(matrix), std::move(label), std::nullopt};
}

ComplexMatrix u3_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  ComplexMatrix m(2, 2);
  m(0, 0) = c;
  m(0, 1) = -std::polar(1.0, lambda) * s;
  m(1, 0) = std::polar(1.0, phi) * s;
  m(1, 1) = std::polar(1.0, phi + lambda) * c;
  return m;
}

Gate u3_gate(Qubit q, double theta, double phi, double lambda) {
  Gate g = make_gate({q}, u3_matrix(theta, phi, lambda), "U3");
  g.params = std::array<double, 3>{theta, phi, lambda};
  return g;
}

ComplexMatrix cx_matrix() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return m;
}

Gate cx_gate(Qubit control, Qubit target) {
  return make_gate({control, target}, cx_matrix(), "CX");
}

Gate inverse(const Gate& g) {
  Gate out{g.qubits, g.matrix.adjoint(), g.label, std::nullopt};
  if (g.params) {
    const auto [theta, phi, lambda] = *g.params;
    out.params = std::array<double, 3>{-theta, -lambda, -phi};
    out.matrix = u3_matrix(-theta, -lambda, -phi);
  }
  return out;
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw Error(ErrorKind::Validation, "circuit needs at least one qubit");
}

Circuit::Circuit(int n_qubits, std::vector<Gate> gates) : Circuit(n_qubits) {
  gates_.reserve(gates.size());
  for (auto& g : gates) append(std::move(g));
}

void Circuit::append(Gate g) {
  for (Qubit q : g.qubits) {
    if (q < 0 || q >= n_qubits_) {
      throw Error(ErrorKind::Validation, "gate qubit " + std::to_string(q) +
                                             " out of range for " +
                                             std::to_string(n_qubits_) + "-qubit circuit");
    }
  }
  gates_.push_back(std::move(g));
}

Circuit inverse(const Circuit& c) {
  std::vector<Gate> gates;
  gates.reserve(c.size());
  for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) gates.push_back(inverse(*it));
  return Circuit(c.n_qubits(), std::move(gates));
}

Circuit concat(const Circuit& first, const Circuit& second) {
  if (first.n_qubits() != second.n_qubits()) {
    throw Error(ErrorKind::Dimension, "concat: qubit counts differ");
  }
  std::vector<Gate> gates = first.gates();
  gates.insert(gates.end(), second.gates().begin(), second.gates().end());
  return Circuit(first.n_qubits(), std::move(gates));
}

int depth(const Circuit& c) {
  std::vector<int> frontier(static_cast<std::size_t>(c.n_qubits()), 0);
  int result = 0;
  for (const Gate& g : c.gates()) {
    int layer = 0;
    for (Qubit q : g.qubits) layer = std::max(layer, frontier[static_cast<std::size_t>(q)]);
    ++layer;
    for (Qubit q : g.qubits) frontier[static_cast<std::size_t>(q)] = layer;
    result = std::max(result, layer);
  }
  return result;
}

Circuit random_circuit(int n_qubits, int target_depth, Rng& rng) {
  if (n_qubits < 2) {
    throw Error(ErrorKind::Validation, "random_circuit: need at least 2 qubits");
  }
  if (target_depth < 1) {
    throw Error(ErrorKind::Validation, "random_circuit: target depth must be >= 1");
  }
  Circuit c(n_qubits);
  std::vector<int> frontier(static_cast<std::size_t>(n_qubits), 0);
  const auto n = static_cast<std::uint64_t>(n_qubits);
  auto open_count = [&] {
    return std::count_if(frontier.begin(), frontier.end(),
                         [&](int f) { return f < target_depth; });
  };
  while (open_count() >= 2) {
    const auto a = static_cast<Qubit>(rng.below(n));
    auto b = static_cast<Qubit>(rng.below(n - 1));
    if (b >= a) ++b;
    const int layer = 1 + std::max(frontier[static_cast<std::size_t>(a)],
                                   frontier[static_cast<std::size_t>(b)]);
    if (layer > target_depth) continue;
    c.append(make_gate({a, b}, haar_random_unitary(4, rng), "G"));
    frontier[static_cast<std::size_t>(a)] = layer;
    frontier[static_cast<std::size_t>(b)] = layer;
  }
  return c;
}

ComplexMatrix embed_local(const ComplexMatrix& m, std::span<const Qubit> gate_qubits,
                          std::span<const Qubit> support) {
  const std::size_t k = gate_qubits.size();
  const std::size_t s = support.size();
  if (m.rows() != (Eigen::Index{1} << k) || m.cols() != m.rows()) {
    throw Error(ErrorKind::Dimension, "embed: matrix does not match gate arity");
  }
  // bit position (within the support-local index) of each gate qubit
  std::vector<unsigned> bit(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto it = std::find(support.begin(), support.end(), gate_qubits[i]);
    if (it == support.end()) {
      throw Error(ErrorKind::Validation,
                  "embed: qubit " + std::to_string(gate_qubits[i]) + " not in support");
    }
    bit[i] = static_cast<unsigned>(s - 1 - static_cast<std::size_t>(it - support.begin()));
  }
  std::size_t gate_mask = 0;
  for (unsigned b : bit) gate_mask |= std::size_t{1} << b;
  auto scatter = [&](std::size_t local) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if ((local >> (k - 1 - i)) & 1U) out |= std::size_t{1} << bit[i];
    }
    return out;
  };
  const std::size_t dim = std::size_t{1} << s;
  const std::size_t gdim = std::size_t{1} << k;
  std::vector<std::size_t> offset(gdim);
  for (std::size_t j = 0; j < gdim; ++j) offset[j] = scatter(j);

  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                          static_cast<Eigen::Index>(dim));
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & gate_mask) continue;
    for (std::size_t r = 0; r < gdim; ++r) {
      for (std::size_t col = 0; col < gdim; ++col) {
        out(static_cast<Eigen::Index>(base | offset[r]),
            static_cast<Eigen::Index>(base | offset[col])) =
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col));
      }
    }
  }
  return out;
}

ComplexMatrix embed(const Gate& g, int n_qubits) {
  if (n_qubits > kDenseQubitLimit) {
    throw Error(ErrorKind::Resource, "embed: " + std::to_string(n_qubits) +
                                         " qubits exceeds the dense limit");
  }
  for (Qubit q : g.qubits) {
    if (q < 0 || q >= n_qubits) {
      throw Error(ErrorKind::Validation, "embed: qubit " + std::to_string(q) + " out of range");
    }
  }
  std::vector<Qubit> support(static_cast<std::size_t>(n_qubits));
  for (int i = 0; i < n_qubits; ++i) support[static_cast<std::size_t>(i)] = n_qubits - 1 - i;
  return embed_local(g.matrix, g.qubits, support);
}

ComplexMatrix local_unitary(std::span<const Gate> gates, std::span<const Qubit> support) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << support.size());
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (const Gate& g : gates) u = embed_local(g.matrix, g.qubits, support) * u;
  return u;
}

void apply_gate(std::span<Complex> amplitudes, int n_qubits, const Gate& g) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (amplitudes.size() != dim) {
    throw Error(ErrorKind::Dimension, "apply_gate: buffer size does not match qubit count");
  }
  const std::size_t k = g.arity();
  const std::size_t gdim = std::size_t{1} << k;
  std::size_t mask = 0;
  std::array<std::size_t, 8> offset{};
  for (std::size_t j = 0; j < gdim; ++j) {
    std::size_t o = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if ((j >> (k - 1 - i)) & 1U) o |= std::size_t{1} << g.qubits[i];
    }
    offset[j] = o;
  }
  for (Qubit q : g.qubits) {
    if (q < 0 || q >= n_qubits) {
      throw Error(ErrorKind::Validation, "apply_gate: qubit " + std::to_string(q) + " out of range");
    }
    mask |= std::size_t{1} << q;
  }
  std::array<Complex, 8> in{};
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & mask) continue;
    for (std::size_t j = 0; j < gdim; ++j) in[j] = amplitudes[base | offset[j]];
    for (std::size_t r = 0; r < gdim; ++r) {
      Complex acc = 0.0;
      for (std::size_t col = 0; col < gdim; ++col) {
        acc += g.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) * in[col];
      }
      amplitudes[base | offset[r]] = acc;
    }
  }
}

ComplexMatrix full_unitary(const Circuit& c, int max_qubits) {
  if (c.n_qubits() > max_qubits) {
    throw Error(ErrorKind::Resource, "full_unitary: " + std::to_string(c.n_qubits()) +
                                         " qubits exceeds limit " + std::to_string(max_qubits));
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << c.n_qubits());
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    std::span<Complex> column(u.col(col).data(), static_cast<std::size_t>(dim));
    for (const Gate& g : c.gates()) apply_gate(column, c.n_qubits(), g);
  }
  return u;
}

}  // namespace unopt
