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

#include "mdspir/node_store.h"

#include <string>

#include "mdspir/error.h"
#include "mdspir/wire.h"

namespace mdspir {

namespace {

void ReadElements(wire::Reader& in, Matrix& m) {
  const std::size_t w = m.field().element_width();
  const std::uint32_t q = m.field().modulus();
  for (auto& v : m.mutable_data()) {
    const std::uint64_t raw = in.Uint(w);
    if (raw >= q) {
      Fail(ErrorCode::kHeaderPayloadMismatch,
           "element " + std::to_string(raw) + " is not below q = " +
               std::to_string(q));
    }
    v = static_cast<Elem>(raw);
  }
}

void WriteElements(wire::Writer& out, const Matrix& m) {
  const std::size_t w = m.field().element_width();
  for (Elem v : m.data()) out.Element(v, w);
}

}  // namespace

NodeStore MakeNodeStore(const DssLayout& layout, std::size_t node_id) {
  NodeStore store{
      .node_id = static_cast<std::uint16_t>(node_id),
      .m = static_cast<std::uint32_t>(layout.m()),
      .alpha = static_cast<std::uint32_t>(layout.alpha()),
      .ell = static_cast<std::uint32_t>(layout.ell()),
      .original_lengths = {},
      .lambda = layout.code().lambda(),
      .data = layout.node_vector(node_id),
  };
  for (const FileObject& f : layout.files()) {
    store.original_lengths.push_back(f.original_length());
  }
  return store;
}

std::vector<std::uint8_t> SerializeNodeStore(const NodeStore& store) {
  wire::Writer out;
  out.Raw(std::string_view(kNodeStoreMagic, 4));
  out.U8(kNodeStoreVersion);
  out.U32(store.field().modulus());
  out.U16(static_cast<std::uint16_t>(store.n()));
  out.U16(static_cast<std::uint16_t>(store.k()));
  out.U16(store.node_id);
  out.U32(store.m);
  out.U32(store.alpha);
  out.U32(store.ell);
  for (std::uint64_t len : store.original_lengths) out.U64(len);
  WriteElements(out, store.lambda);
  WriteElements(out, store.data);
  return out.Take();
}

NodeStore ParseNodeStore(std::span<const std::uint8_t> bytes) {
  wire::Reader in(bytes, ErrorCode::kTruncatedPayload);
  if (in.Raw(4) != std::string_view(kNodeStoreMagic, 4)) {
    Fail(ErrorCode::kBadMagic, "not a node store");
  }
  const std::uint8_t version = in.U8();
  if (version != kNodeStoreVersion) {
    Fail(ErrorCode::kVersionUnsupported,
         "node store version " + std::to_string(version));
  }
  const std::uint32_t q = in.U32();
  const std::uint16_t n = in.U16();
  const std::uint16_t k = in.U16();
  const std::uint16_t node_id = in.U16();
  const std::uint32_t m = in.U32();
  const std::uint32_t alpha = in.U32();
  const std::uint32_t ell = in.U32();

  if (!IsPrime(q) || q >= (1u << 31)) {
    Fail(ErrorCode::kHeaderPayloadMismatch,
         "q = " + std::to_string(q) + " is not a supported prime");
  }
  if (k < 1 || k >= n || node_id < 1 || node_id > n || m < 1 || alpha < 1 ||
      ell < 1) {
    Fail(ErrorCode::kHeaderPayloadMismatch,
         "inconsistent header: n=" + std::to_string(n) + " k=" +
             std::to_string(k) + " node=" + std::to_string(node_id) +
             " m=" + std::to_string(m) + " alpha=" + std::to_string(alpha) +
             " ell=" + std::to_string(ell));
  }
  const PrimeField field = PrimeField::Create(q);
  const std::uint64_t symbols = std::uint64_t{m} * alpha * ell;
  const std::uint64_t expected =
      8ull * m + (std::uint64_t{k} * n + symbols) * field.element_width();
  if (in.remaining() < expected) {
    Fail(ErrorCode::kTruncatedPayload,
         "payload has " + std::to_string(in.remaining()) + " bytes, header "
         "implies " + std::to_string(expected));
  }
  if (in.remaining() > expected) {
    Fail(ErrorCode::kHeaderPayloadMismatch,
         std::to_string(in.remaining() - expected) + " trailing bytes");
  }

  NodeStore store{
      .node_id = node_id,
      .m = m,
      .alpha = alpha,
      .ell = ell,
      .original_lengths = {},
      .lambda = Matrix(field, k, n),
      .data = Matrix(field, std::size_t{m} * alpha, ell),
  };
  for (std::uint32_t f = 0; f < m; ++f) {
    store.original_lengths.push_back(in.U64());
  }
  ReadElements(in, store.lambda);
  ReadElements(in, store.data);
  return store;
}

}  // namespace mdspir
