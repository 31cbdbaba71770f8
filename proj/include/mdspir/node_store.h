// Copyright 2026 The mdspir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MDSPIR_NODE_STORE_H_
#define MDSPIR_NODE_STORE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mdspir/matrix.h"
#include "mdspir/mds_code.h"
#include "mdspir/storage_layout.h"

namespace mdspir {

// On-disk image of one storage node. All integers little-endian:
//
//   "PIRN" | version u8 = 1 | q u32 | n u16 | k u16 | node_id u16 | m u32 |
//   alpha u32 | ell u32 | orig_len u64 x m | Lambda (k*n elements) |
//   payload (m*alpha*ell elements)
//
// Elements are written at width w = ceil(bits(q - 1) / 8). The header carries
// everything a reader needs to decode, Lambda included.
inline constexpr char kNodeStoreMagic[] = "PIRN";
inline constexpr std::uint8_t kNodeStoreVersion = 1;

struct NodeStore {
  std::uint16_t node_id = 0;  // 1-based
  std::uint32_t m = 0;
  std::uint32_t alpha = 0;
  std::uint32_t ell = 0;
  std::vector<std::uint64_t> original_lengths;
  Matrix lambda;  // k x n
  Matrix data;    // (m * alpha) x ell, the node vector w_i

  std::size_t n() const { return lambda.cols(); }
  std::size_t k() const { return lambda.rows(); }
  const PrimeField& field() const { return lambda.field(); }

  friend bool operator==(const NodeStore&, const NodeStore&) = default;
};

// Throws kBadNodeIndex.
NodeStore MakeNodeStore(const DssLayout& layout, std::size_t node_id);

std::vector<std::uint8_t> SerializeNodeStore(const NodeStore& store);

// Throws kBadMagic, kVersionUnsupported, kTruncatedPayload,
// kHeaderPayloadMismatch (trailing bytes or header fields that contradict
// each other, e.g. k >= n or an element >= q).
NodeStore ParseNodeStore(std::span<const std::uint8_t> bytes);

inline std::vector<std::uint8_t> ExportNodeStore(const DssLayout& layout,
                                                 std::size_t node_id) {
  return SerializeNodeStore(MakeNodeStore(layout, node_id));
}

}  // namespace mdspir

#endif  // MDSPIR_NODE_STORE_H_
