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

#include <cstddef>
#include <vector>

#include "unopt/circuit.hpp"

namespace unopt {

/// One merged block: member gate indices (in circuit order) and its ordered
/// qubit support (order of first appearance).
struct Block {
  std::vector<std::size_t> members;
  std::vector<Qubit> support;
};

/// Left-to-right greedy partition into blocks of at most `max_block` qubits.
///
/// Each wire remembers the most recent block touching it. A new gate looks at
/// those blocks for its wires. When the gate and all of them fit in
/// `max_block` qubits, and none of the older ones is shadowed on some other
/// wire by a later block, they fuse into the most recent one. Otherwise the
/// gate joins the most recent block if the union fits, or opens a new block.
/// Blocks are returned in creation order, which is a valid execution order;
/// members are in circuit order.
std::vector<Block> greedy_blocks(const Circuit& c, int max_block);

/// One gate for a block: the lone member itself, or a "BLOCK" gate on the block support.
Gate merge_block(const Circuit& c, const Block& block);

Circuit greedy_synthesize(const Circuit& c, int max_block = 2);

/// Depth after greedy merging into three-qubit blocks.
int merged_depth3(const Circuit& c);

}  // namespace unopt
