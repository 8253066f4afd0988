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

#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "unopt/error.hpp"
#include "unopt/simulate.hpp"
#include "unopt/unoptimize.hpp"

namespace unopt {
namespace {

using testing::random_gate;
using testing::reference_unitary;

Circuit single(int n, Gate g) {
  Circuit c(n);
  c.append(std::move(g));
  return c;
}

Gate pauli_x_on(Qubit q) { return make_gate({q}, testing::pauli_x(), "X"); }

TEST(Simulate, EmptyCircuitKeepsZeroState) {
  const StateVector s = simulate(Circuit(4));
  EXPECT_EQ(s.amplitudes[0], Complex(1.0, 0.0));
  EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
}

TEST(Simulate, LittleEndianBasisIndex) {
  const StateVector s = simulate(single(2, pauli_x_on(1)));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(std::abs(s.amplitudes[i]), i == 2 ? 1.0 : 0.0);
  }
}

TEST(Simulate, MatchesDenseOracle) {
  Rng r(Seed{1});
  for (int n = 1; n <= 8; ++n) {
    Circuit c(n);
    for (int i = 0; i < 3 * n; ++i) {
      const auto a = static_cast<Qubit>(r.below(static_cast<std::uint64_t>(n)));
      if (n == 1 || r.uniform() < 0.3) {
        c.append(random_gate({a}, r));
      } else {
        auto b = static_cast<Qubit>(r.below(static_cast<std::uint64_t>(n - 1)));
        if (b >= a) ++b;
        c.append(random_gate({a, b}, r));
      }
    }
    const StateVector s = simulate(c);
    const ComplexMatrix u = reference_unitary(c);
    double err = 0.0;
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
      err = std::max(err, std::abs(s.amplitudes[i] - u(static_cast<Eigen::Index>(i), 0)));
    }
    EXPECT_LT(err, 1e-10);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-9);
  }
}

TEST(Simulate, CustomInputAndGuards) {
  StateVector in = StateVector::zero(2);
  in.amplitudes = {0.0, 0.0, 0.0, 1.0};
  const StateVector s = simulate(single(2, pauli_x_on(0)), in);
  EXPECT_DOUBLE_EQ(std::abs(s.amplitudes[2]), 1.0);
  EXPECT_THROW(simulate(Circuit(3), in), Error);
  EXPECT_THROW(simulate(Circuit(6), std::nullopt, 5), Error);
}

TEST(Fidelity, SelfIsOne) {
  Rng r(Seed{2});
  const Circuit c = random_circuit(6, 6, r);
  EXPECT_NEAR(fidelity_exact(c, c), 1.0, 1e-12);
}

TEST(Fidelity, OrthogonalIsZero) {
  for (Qubit q = 0; q < 4; ++q) {
    EXPECT_NEAR(fidelity_exact(Circuit(4), single(4, pauli_x_on(q))), 0.0, 1e-15);
  }
}

TEST(Fidelity, SymmetricAndMismatchRejected) {
  Rng r(Seed{3});
  const Circuit a = random_circuit(5, 5, r), b = random_circuit(5, 5, r);
  EXPECT_NEAR(fidelity_exact(a, b), fidelity_exact(b, a), 1e-12);
  EXPECT_THROW(fidelity_exact(a, Circuit(4)), Error);
}

TEST(Fidelity, InvariantUnderUnoptimize) {
  Rng r(Seed{4});
  const Circuit u = random_circuit(5, 5, r);
  const Circuit v = random_circuit(5, 5, r);
  const Unoptimized w = unoptimize(v, PairSelection::Concatenated, std::nullopt, r);
  EXPECT_NEAR(fidelity_exact(u, v), fidelity_exact(u, w.v), 1e-8);
  EXPECT_NEAR(fidelity_exact(v, w.v), 1.0, 1e-9);
}

TEST(Fidelity, RandomCircuitAverageIsInverseDimension) {
  // circuits of Haar two-qubit gates covering every qubit average to the maximally mixed state
  Rng r(Seed{5});
  const int n = 3, samples = 2000;
  const Circuit u = random_circuit(n, n, r);
  double sum = 0.0, sum2 = 0.0;
  for (int t = 0; t < samples; ++t) {
    // the average holds for every gate layout that touches all qubits
    Circuit v(n);
    for (std::set<Qubit> touched; touched.size() != static_cast<std::size_t>(n);) {
      v = random_circuit(n, n, r);
      touched.clear();
      for (const Gate& g : v.gates()) touched.insert(g.qubits.begin(), g.qubits.end());
    }
    const double f = fidelity_exact(u, v);
    sum += f;
    sum2 += f * f;
  }
  const double mean = sum / samples;
  const double se = std::sqrt((sum2 / samples - mean * mean) / samples);
  EXPECT_LT(std::abs(mean - 1.0 / 8.0), 3.0 * se);
}

TEST(Sampled, IdenticalCircuits) {
  Rng r(Seed{6});
  const Circuit c = random_circuit(4, 4, r);
  const SampledFidelity s = fidelity_sampled(c, c, 1000, r);
  EXPECT_DOUBLE_EQ(s.estimate, 1.0);
  EXPECT_DOUBLE_EQ(s.std_error, 0.0);
}

TEST(Sampled, OrthogonalCircuits) {
  Rng r(Seed{7});
  const SampledFidelity s = fidelity_sampled(Circuit(3), single(3, pauli_x_on(2)), 1000, r);
  EXPECT_DOUBLE_EQ(s.estimate, 0.0);
}

TEST(Sampled, HalfFidelityCalibration) {
  Rng r(Seed{8});
  const Circuit h = single(2, make_gate({0}, testing::hadamard(), "H"));
  const SampledFidelity s = fidelity_sampled(Circuit(2), h, 100000, r);
  EXPECT_NEAR(s.std_error, std::sqrt(0.25 / 100000), 1e-4);
  EXPECT_LT(std::abs(s.estimate - 0.5), 5.0 * s.std_error);
}

TEST(Sampled, ConvergesToExact) {
  Rng r(Seed{9});
  const Circuit u = random_circuit(3, 3, r), v = random_circuit(3, 3, r);
  const double f = fidelity_exact(u, v);
  const SampledFidelity s = fidelity_sampled(u, v, 200000, r);
  EXPECT_LT(std::abs(s.estimate - f), 5.0 * std::sqrt(f * (1 - f) / 200000) + 1e-12);
}

TEST(Sampled, RejectsZeroShots) {
  Rng r(Seed{10});
  EXPECT_THROW(fidelity_sampled(Circuit(2), Circuit(2), 0, r), Error);
}

TEST(Decide, UnoptimizedIsYes) {
  Rng r(Seed{11});
  const Circuit u = random_circuit(4, 4, r);
  const Unoptimized w = unoptimize(u, PairSelection::Random, std::nullopt, r);
  EXPECT_EQ(decide_equivalence(u, w.v, 0.1, VerifyMode::Exact).verdict, Verdict::Yes);
  const EquivalenceVerdict s = decide_equivalence(u, w.v, 0.1, VerifyMode::Sampled);
  EXPECT_EQ(s.verdict, Verdict::Yes);
  EXPECT_EQ(s.shots, default_shots(0.1));
}

TEST(Decide, ExtraXIsNo) {
  Rng r(Seed{12});
  const Circuit u = random_circuit(4, 4, r);
  Circuit v = u;
  v.append(pauli_x_on(0));
  v = concat(v, inverse(u));
  const Circuit id(4);
  EXPECT_EQ(decide_equivalence(id, v, 0.1, VerifyMode::Exact).verdict, Verdict::No);
  EXPECT_EQ(decide_equivalence(id, v, 0.1, VerifyMode::Sampled).verdict, Verdict::No);
}

TEST(Decide, GapRegionIsIndeterminate) {
  const double gap = 0.1;
  // Ry(t)|0> overlaps |0> with probability cos^2(t/2) = 1 - 1.5 gap
  const double t = 2.0 * std::acos(std::sqrt(1.0 - 1.5 * gap));
  const Circuit v = single(2, u3_gate(0, t, 0.0, 0.0));
  const EquivalenceVerdict e = decide_equivalence(Circuit(2), v, gap, VerifyMode::Exact);
  EXPECT_EQ(e.verdict, Verdict::Indeterminate);
  EXPECT_NEAR(e.fidelity_estimate, 1.0 - 1.5 * gap, 1e-12);
  EXPECT_FALSE(e.shots.has_value());
}

TEST(Decide, DefaultShots) {
  EXPECT_EQ(default_shots(0.05), 6400u);
  EXPECT_EQ(default_shots(0.1), 1600u);
}

TEST(Decide, InvalidGap) {
  for (double g : {0.0, -0.1, 0.5, 0.7}) {
    EXPECT_THROW(decide_equivalence(Circuit(2), Circuit(2), g, VerifyMode::Exact), Error);
  }
}

}  // namespace
}  // namespace unopt
