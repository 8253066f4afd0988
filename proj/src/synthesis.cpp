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

#include "unopt/synthesis.hpp"

#include <algorithm>
#include <string>

#include "unopt/error.hpp"

namespace unopt {

std::vector<Block> greedy_blocks(const Circuit& c, int max_block) {
  if (max_block != 2 && max_block != 3) {
    throw Error(ErrorKind::Validation, "greedy_synthesize: max_block must be 2 or 3");
  }
  std::vector<Block> blocks;
  std::vector<bool> alive;
  std::vector<long> last(static_cast<std::size_t>(c.n_qubits()), -1);
  const auto limit = static_cast<std::size_t>(max_block);
  auto add_support = [](std::vector<Qubit>& into, const std::vector<Qubit>& from) {
    for (Qubit q : from) {
      if (std::find(into.begin(), into.end(), q) == into.end()) into.push_back(q);
    }
  };

  for (std::size_t i = 0; i < c.size(); ++i) {
    const Gate& g = c[i];
    if (g.arity() > limit) {
      throw Error(ErrorKind::Validation, "greedy_synthesize: gate " + std::to_string(i) +
                                             " has arity " + std::to_string(g.arity()) +
                                             " > max_block " + std::to_string(max_block));
    }
    std::vector<long> open;
    for (Qubit q : g.qubits) {
      const long b = last[static_cast<std::size_t>(q)];
      if (b >= 0 && std::find(open.begin(), open.end(), b) == open.end()) open.push_back(b);
    }
    std::sort(open.begin(), open.end());

    long target = -1;
    if (!open.empty()) {
      target = open.back();
      std::vector<Qubit> all = blocks[static_cast<std::size_t>(target)].support;
      bool fusable = open.size() > 1;
      for (std::size_t k = 0; k + 1 < open.size() && fusable; ++k) {
        const Block& b = blocks[static_cast<std::size_t>(open[k])];
        add_support(all, b.support);
        // fusing moves b forward to the target, past every block created in between
        for (long j = open[k] + 1; j < target && fusable; ++j) {
          if (!alive[static_cast<std::size_t>(j)] ||
              std::find(open.begin(), open.end(), j) != open.end()) {
            continue;
          }
          for (Qubit q : blocks[static_cast<std::size_t>(j)].support) {
            if (std::find(b.support.begin(), b.support.end(), q) != b.support.end()) {
              fusable = false;
            }
          }
        }
      }
      add_support(all, g.qubits);
      Block& t = blocks[static_cast<std::size_t>(target)];
      if (fusable && all.size() <= limit) {
        for (std::size_t k = 0; k + 1 < open.size(); ++k) {
          Block& b = blocks[static_cast<std::size_t>(open[k])];
          t.members.insert(t.members.end(), b.members.begin(), b.members.end());
          for (Qubit q : b.support) {
            long& l = last[static_cast<std::size_t>(q)];
            if (l == open[k]) l = target;
          }
          alive[static_cast<std::size_t>(open[k])] = false;
        }
        std::sort(t.members.begin(), t.members.end());
        t.members.push_back(i);
        t.support = all;
      } else {
        std::vector<Qubit> joined = t.support;
        add_support(joined, g.qubits);
        if (joined.size() <= limit) {
          t.members.push_back(i);
          t.support = joined;
        } else {
          target = -1;
        }
      }
    }
    if (target < 0) {
      blocks.push_back(Block{{i}, g.qubits});
      alive.push_back(true);
      target = static_cast<long>(blocks.size() - 1);
    }
    for (Qubit q : g.qubits) last[static_cast<std::size_t>(q)] = target;
  }
  std::vector<Block> out;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (alive[b]) out.push_back(std::move(blocks[b]));
  }
  return out;
}

Gate merge_block(const Circuit& c, const Block& block) {
  if (block.members.size() == 1) return c[block.members.front()];
  std::vector<Gate> members;
  members.reserve(block.members.size());
  for (std::size_t m : block.members) members.push_back(c[m]);
  return Gate{block.support, local_unitary(members, block.support), "BLOCK", std::nullopt};
}

Circuit greedy_synthesize(const Circuit& c, int max_block) {
  // a later pass can still merge blocks the earlier one left apart, so scan
  // until a pass leaves the gate count unchanged
  Circuit cur = c;
  while (true) {
    const std::vector<Block> blocks = greedy_blocks(cur, max_block);
    if (blocks.size() == cur.size()) return cur;
    Circuit next(cur.n_qubits());
    for (const Block& b : blocks) next.append(merge_block(cur, b));
    cur = std::move(next);
  }
}

int merged_depth3(const Circuit& c) {
  Circuit merged(c.n_qubits());
  for (const Block& b : greedy_blocks(c, 3)) merged.append(merge_block(c, b));
  return depth(merged);
}

}  // namespace unopt
