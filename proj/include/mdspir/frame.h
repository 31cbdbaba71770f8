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

#ifndef MDSPIR_FRAME_H_
#define MDSPIR_FRAME_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <variant>
#include <vector>

#include "mdspir/matrix.h"

namespace mdspir {

// Query Q_i sent to one node: d rows over the node's m alpha stored symbols.
struct QueryMessage {
  std::uint32_t session_id = 0;
  std::uint16_t node_id = 0;  // 1-based
  Matrix q;                   // d x (m alpha)

  friend bool operator==(const QueryMessage&, const QueryMessage&) = default;
};

// The node's projection R_i = Q_i w_i, one ExtSymbol per query row.
struct ResponseMessage {
  std::uint32_t session_id = 0;
  std::uint16_t node_id = 0;
  Matrix r;  // d x ell

  friend bool operator==(const ResponseMessage&,
                         const ResponseMessage&) = default;
};

using Message = std::variant<QueryMessage, ResponseMessage>;

// Wire frame, little-endian:
//   "PIRD" | version u8 = 1 | msg_type u8 (1 query, 2 response) |
//   session_id u32 | node_id u16 | d u16 | payload_len u32 | payload
// The payload is the message matrix, row-major, elements at width w. Column
// count (m alpha or ell) is payload_len / (d w).
inline constexpr char kFrameMagic[] = "PIRD";
inline constexpr std::uint8_t kFrameVersion = 1;
inline constexpr std::size_t kFrameHeaderSize = 18;

enum class MsgType : std::uint8_t { kQuery = 1, kResponse = 2 };

std::vector<std::uint8_t> EncodeFrame(const Message& msg);

// Throws kBadMagic, kVersionUnsupported, kBadMsgType, kLengthMismatch.
Message DecodeFrame(std::span<const std::uint8_t> bytes,
                    const PrimeField& field);

// One direction of an in-process byte pipe.
class ByteChannel {
 public:
  void Write(std::span<const std::uint8_t> bytes) {
    buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
  }
  // Pops one complete frame. Throws kLengthMismatch if the pipe holds less.
  std::vector<std::uint8_t> ReadFrame();
  bool empty() const { return buffer_.empty(); }

 private:
  std::deque<std::uint8_t> buffer_;
};

}  // namespace mdspir

#endif  // MDSPIR_FRAME_H_
