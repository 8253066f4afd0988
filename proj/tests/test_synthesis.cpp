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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "unopt/error.hpp"
#include "unopt/synthesis.hpp"

namespace unopt {
namespace {

using testing::random_gate;
using testing::reference_unitary;

Circuit mixed_circuit(int n, int count, Rng& r) {
  Circuit c(n);
  for (int i = 0; i < count; ++i) {
    const auto a = static_cast<Qubit>(r.below(static_cast<std::uint64_t>(n)));
    if (r.uniform() < 0.3) {
      c.append(random_gate({a}, r));
      continue;
    }
    auto b = static_cast<Qubit>(r.below(static_cast<std::uint64_t>(n - 1)));
    if (b >= a) ++b;
    c.append(random_gate({a, b}, r));
  }
  return c;
}

TEST(Greedy, SamePairMergesToProduct) {
  Rng r(Seed{1});
  Circuit c(2);
  c.append(random_gate({0, 1}, r));
  c.append(random_gate({1, 0}, r));
  const Circuit out = greedy_synthesize(c);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_LT((reference_unitary(out) - reference_unitary(c)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Greedy, DisjointPairsUnchanged) {
  Rng r(Seed{2});
  Circuit c(4);
  c.append(random_gate({0, 1}, r));
  c.append(random_gate({2, 3}, r));
  const Circuit out = greedy_synthesize(c, 2);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].qubits, c[0].qubits);
  EXPECT_EQ(out[1].qubits, c[1].qubits);
  EXPECT_EQ(out[0].label, "G");
}

TEST(Greedy, TriangleBecomesOneThreeQubitGate) {
  Rng r(Seed{3});
  Circuit c(3);
  c.append(random_gate({0, 1}, r));
  c.append(random_gate({1, 2}, r));
  c.append(random_gate({0, 2}, r));
  const Circuit out = greedy_synthesize(c, 3);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].arity(), 3u);
  EXPECT_LT((reference_unitary(out) - reference_unitary(c)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(merged_depth3(c), 1);
}

TEST(Greedy, ChainOfThreeMergesIntoTwoBlocks) {
  Rng r(Seed{4});
  Circuit c(4);
  c.append(random_gate({0, 1}, r));
  c.append(random_gate({2, 3}, r));
  c.append(random_gate({1, 2}, r));
  const Circuit out = greedy_synthesize(c, 3);
  // (1,2) joins the later of the two blocks on its wires, which has room
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].qubits, (std::vector<Qubit>{0, 1}));
  EXPECT_EQ(out[1].qubits, (std::vector<Qubit>{2, 3, 1}));
  EXPECT_EQ(merged_depth3(c), 2);
  EXPECT_LT((reference_unitary(out) - reference_unitary(c)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Greedy, BlockedWireOpensNewBlock) {
  Rng r(Seed{5});
  Circuit c(3);
  c.append(random_gate({0, 1}, r));
  c.append(random_gate({1, 2}, r));
  c.append(random_gate({0, 1}, r));
  // the second (0,1) may not rejoin the first block across the (1,2) gate
  const Circuit out = greedy_synthesize(c, 2);
  EXPECT_EQ(out.size(), 3u);
  EXPECT_EQ(depth(out), 3);
}

TEST(Greedy, SingleQubitGatesAbsorbedOrKept) {
  Rng r(Seed{6});
  Circuit c(3);
  c.append(random_gate({2}, r));
  c.append(random_gate({0, 1}, r));
  c.append(random_gate({1}, r));
  const Circuit out = greedy_synthesize(c, 2);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].arity(), 1u);
  EXPECT_EQ(out[1].arity(), 2u);
  EXPECT_LT((reference_unitary(out) - reference_unitary(c)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Greedy, EmptyCircuit) {
  EXPECT_TRUE(greedy_synthesize(Circuit(3)).empty());
  EXPECT_EQ(merged_depth3(Circuit(3)), 0);
}

TEST(Greedy, AnyCircuitInsideThreeQubitsHasMergedDepthOne) {
  Rng r(Seed{7});
  for (int t = 0; t < 20; ++t) {
    Circuit c(5);
    const Circuit inner = mixed_circuit(3, 15, r);
    for (const Gate& g : inner.gates()) c.append(g);
    EXPECT_EQ(merged_depth3(c), 1);
  }
}

TEST(Greedy, PreservesUnitaryAndIsIdempotent) {
  Rng r(Seed{8});
  for (int n = 2; n <= 10; ++n) {
    const Circuit c = mixed_circuit(n, 4 * n, r);
    const ComplexMatrix ref = full_unitary(c);
    for (int m : {2, 3}) {
      const Circuit once = greedy_synthesize(c, m);
      EXPECT_LE(once.size(), c.size());
      for (const Gate& g : once.gates()) EXPECT_LE(g.arity(), static_cast<std::size_t>(m));
      EXPECT_LT(phase_distance(full_unitary(once), ref), 1e-9);
      const Circuit twice = greedy_synthesize(once, m);
      EXPECT_EQ(twice.size(), once.size());
      EXPECT_EQ(depth(twice), depth(once));
    }
  }
}

TEST(Greedy, Deterministic) {
  Rng r(Seed{9});
  const Circuit c = mixed_circuit(6, 30, r);
  const Circuit a = greedy_synthesize(c), b = greedy_synthesize(c);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].qubits, b[i].qubits);
    EXPECT_EQ(a[i].matrix, b[i].matrix);
  }
}

TEST(Greedy, ArityBounds) {
  Rng r(Seed{10});
  Circuit c(3);
  c.append(random_gate({0, 1, 2}, r));
  EXPECT_THROW(greedy_synthesize(c, 2), Error);
  EXPECT_NO_THROW(greedy_synthesize(c, 3));
  EXPECT_THROW(greedy_synthesize(c, 4), Error);
  EXPECT_THROW(greedy_synthesize(c, 1), Error);
}

}  // namespace
}  // namespace unopt
