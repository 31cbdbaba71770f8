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

#include "mdspir/frame.h"

#include <string>

#include "mdspir/error.h"
#include "mdspir/wire.h"

namespace mdspir {

namespace {

void WriteFrame(wire::Writer& out, MsgType type, std::uint32_t session,
                std::uint16_t node, const Matrix& body) {
  const std::size_t w = body.field().element_width();
  if (body.rows() > 0xffff) {
    Fail(ErrorCode::kLengthMismatch, "d does not fit in 16 bits");
  }
  out.Raw(std::string_view(kFrameMagic, 4));
  out.U8(kFrameVersion);
  out.U8(static_cast<std::uint8_t>(type));
  out.U32(session);
  out.U16(node);
  out.U16(static_cast<std::uint16_t>(body.rows()));
  out.U32(static_cast<std::uint32_t>(body.data().size() * w));
  for (Elem v : body.data()) out.Element(v, w);
}

}  // namespace

std::vector<std::uint8_t> EncodeFrame(const Message& msg) {
  wire::Writer out;
  if (const auto* q = std::get_if<QueryMessage>(&msg)) {
    WriteFrame(out, MsgType::kQuery, q->session_id, q->node_id, q->q);
  } else {
    const auto& r = std::get<ResponseMessage>(msg);
    WriteFrame(out, MsgType::kResponse, r.session_id, r.node_id, r.r);
  }
  return out.Take();
}

Message DecodeFrame(std::span<const std::uint8_t> bytes,
                    const PrimeField& field) {
  wire::Reader in(bytes, ErrorCode::kLengthMismatch);
  if (in.Raw(4) != std::string_view(kFrameMagic, 4)) {
    Fail(ErrorCode::kBadMagic, "not a PIR frame");
  }
  const std::uint8_t version = in.U8();
  if (version != kFrameVersion) {
    Fail(ErrorCode::kVersionUnsupported,
         "frame version " + std::to_string(version));
  }
  const std::uint8_t type = in.U8();
  if (type != static_cast<std::uint8_t>(MsgType::kQuery) &&
      type != static_cast<std::uint8_t>(MsgType::kResponse)) {
    Fail(ErrorCode::kBadMsgType, "message type " + std::to_string(type));
  }
  const std::uint32_t session = in.U32();
  const std::uint16_t node = in.U16();
  const std::uint16_t d = in.U16();
  const std::uint32_t payload_len = in.U32();
  if (payload_len != in.remaining()) {
    Fail(ErrorCode::kLengthMismatch,
         "declared payload " + std::to_string(payload_len) + " bytes, got " +
             std::to_string(in.remaining()));
  }
  const std::size_t w = field.element_width();
  if (d == 0 || payload_len % (std::size_t{d} * w) != 0) {
    Fail(ErrorCode::kLengthMismatch,
         "payload of " + std::to_string(payload_len) +
             " bytes is not d = " + std::to_string(d) + " rows of width-" +
             std::to_string(w) + " elements");
  }
  Matrix body(field, d, payload_len / (std::size_t{d} * w));
  for (auto& v : body.mutable_data()) {
    const std::uint64_t raw = in.Uint(w);
    if (raw >= field.modulus()) {
      Fail(ErrorCode::kInvalidArgument,
           "element " + std::to_string(raw) + " outside GF(" +
               std::to_string(field.modulus()) + ")");
    }
    v = static_cast<Elem>(raw);
  }
  if (type == static_cast<std::uint8_t>(MsgType::kQuery)) {
    return QueryMessage{.session_id = session, .node_id = node, .q = body};
  }
  return ResponseMessage{.session_id = session, .node_id = node, .r = body};
}

std::vector<std::uint8_t> ByteChannel::ReadFrame() {
  if (buffer_.size() < kFrameHeaderSize) {
    Fail(ErrorCode::kLengthMismatch, "channel holds a partial frame header");
  }
  std::uint32_t payload_len = 0;
  for (int b = 0; b < 4; ++b) {
    payload_len |= static_cast<std::uint32_t>(buffer_[14 + b]) << (8 * b);
  }
  const std::size_t total = kFrameHeaderSize + payload_len;
  if (buffer_.size() < total) {
    Fail(ErrorCode::kLengthMismatch, "channel holds a partial frame payload");
  }
  std::vector<std::uint8_t> frame(buffer_.begin(), buffer_.begin() + total);
  buffer_.erase(buffer_.begin(), buffer_.begin() + total);
  return frame;
}

}  // namespace mdspir
