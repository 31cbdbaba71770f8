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

#include "mdspir/storage_layout.h"

#include <string>
#include <utility>

#include "mdspir/error.h"

namespace mdspir {

namespace {

std::size_t ResolveEll(std::uint64_t count, std::size_t k, std::size_t alpha,
                       std::optional<std::size_t> ell) {
  const std::size_t needed = ExtensionDegreeFor(count, k, alpha);
  if (!ell) return needed;
  if (*ell < needed) {
    Fail(ErrorCode::kShapeMismatch,
         std::to_string(count) + " elements need ell >= " +
             std::to_string(needed) + ", got " + std::to_string(*ell));
  }
  return *ell;
}

template <typename T>
FileObject Fill(std::span<const T> values, const CodeParams& code,
                std::size_t alpha, std::optional<std::size_t> ell) {
  if (alpha == 0) Fail(ErrorCode::kInvalidArgument, "alpha must be >= 1");
  const std::size_t k = code.k();
  const std::size_t degree = ResolveEll(values.size(), k, alpha, ell);
  // Element b goes to cell b / ell at coordinate b % ell; cell c is (row
  // c % k, stripe c / k), i.e. the grid fills column-major.
  FileObject out(code.field(), k, alpha, degree);
  for (std::size_t c = 0; c < k * alpha; ++c) {
    ExtSymbol sym(degree, 0);
    for (std::size_t t = 0; t < degree; ++t) {
      const std::size_t b = c * degree + t;
      if (b < values.size()) sym[t] = code.field().Reduce(values[b]);
    }
    out.set_cell(c % k, c / k, sym);
  }
  out.set_original_length(values.size());
  return out;
}

}  // namespace

FileObject::FileObject(const PrimeField& field, std::size_t k,
                       std::size_t alpha, std::size_t ell)
    : k_(k), alpha_(alpha), symbols_(field, k * alpha, ell) {}

Matrix FileObject::stripe(std::size_t s) const {
  Matrix out(field(), k_, ell());
  for (std::size_t r = 0; r < k_; ++r) out.set_symbol(r, cell(r, s));
  return out;
}

std::size_t ExtensionDegreeFor(std::uint64_t count, std::size_t k,
                               std::size_t alpha) {
  const std::uint64_t cells = static_cast<std::uint64_t>(k) * alpha;
  return count == 0 ? 1 : static_cast<std::size_t>((count + cells - 1) / cells);
}

FileObject IngestBytes(std::span<const std::uint8_t> raw,
                       const CodeParams& code, std::size_t alpha,
                       std::optional<std::size_t> ell) {
  if (code.field().modulus() < 257) {
    Fail(ErrorCode::kFieldTooSmallForBytes,
         "byte mode needs q >= 257, got q = " +
             std::to_string(code.field().modulus()));
  }
  return Fill(raw, code, alpha, ell);
}

std::vector<std::uint8_t> ExtractBytes(const FileObject& file) {
  const auto data = file.symbols().data();
  if (file.original_length() > data.size()) {
    Fail(ErrorCode::kShapeMismatch, "original length exceeds grid capacity");
  }
  std::vector<std::uint8_t> out(file.original_length());
  for (std::size_t b = 0; b < out.size(); ++b) {
    if (data[b] > 0xff) {
      Fail(ErrorCode::kInvalidArgument,
           "element " + std::to_string(b) + " is not a byte");
    }
    out[b] = static_cast<std::uint8_t>(data[b]);
  }
  return out;
}

FileObject IngestSymbols(std::span<const Elem> values, const CodeParams& code,
                         std::size_t alpha, std::optional<std::size_t> ell) {
  for (Elem v : values) {
    if (v >= code.field().modulus()) {
      Fail(ErrorCode::kInvalidArgument,
           "symbol " + std::to_string(v) + " is not in GF(" +
               std::to_string(code.field().modulus()) + ")");
    }
  }
  return Fill(values, code, alpha, ell);
}

std::vector<Elem> ExtractSymbols(const FileObject& file) {
  const auto data = file.symbols().data();
  if (file.original_length() > data.size()) {
    Fail(ErrorCode::kShapeMismatch, "original length exceeds grid capacity");
  }
  return std::vector<Elem>(data.begin(), data.begin() + file.original_length());
}

DssLayout DssLayout::Build(const GeneratorMatrix& code,
                           std::vector<FileObject> files,
                           kernels::Mode mode) {
  if (files.empty()) Fail(ErrorCode::kShapeMismatch, "no files to store");
  const std::size_t k = code.k();
  const std::size_t alpha = files.front().alpha();
  const std::size_t ell = files.front().ell();
  for (std::size_t f = 0; f < files.size(); ++f) {
    const FileObject& file = files[f];
    if (file.k() != k || file.alpha() != alpha || file.ell() != ell ||
        !(file.field() == code.field())) {
      Fail(ErrorCode::kShapeMismatch,
           "file " + std::to_string(f + 1) + " is " + std::to_string(file.k()) +
               "x" + std::to_string(file.alpha()) + " with ell " +
               std::to_string(file.ell()) + ", expected " + std::to_string(k) +
               "x" + std::to_string(alpha) + " with ell " +
               std::to_string(ell));
    }
  }
  const std::size_t m = files.size();
  const std::size_t width = m * alpha * ell;

  // Row j of `systematic` is everything systematic node j stores, laid out in
  // node order; the whole system is then one product Lambda^T * systematic.
  Matrix systematic(code.field(), k, width);
  for (std::size_t f = 0; f < m; ++f) {
    for (std::size_t s = 0; s < alpha; ++s) {
      for (std::size_t j = 0; j < k; ++j) {
        auto src = files[f].symbols().row(s * k + j);
        auto dst = systematic.mutable_row(j);
        std::copy(src.begin(), src.end(),
                  dst.begin() + (f * alpha + s) * ell);
      }
    }
  }
  const Matrix encoded =
      kernels::Multiply(code.lambda().Transposed(), systematic, mode);

  DssLayout layout(code, std::move(files), alpha, ell);
  layout.node_vectors_.reserve(code.n());
  for (std::size_t i = 0; i < code.n(); ++i) {
    Matrix w(code.field(), m * alpha, ell);
    auto src = encoded.row(i);
    std::copy(src.begin(), src.end(), w.mutable_data().begin());
    layout.node_vectors_.push_back(std::move(w));
  }
  return layout;
}

const FileObject& DssLayout::file(std::size_t f) const {
  if (f < 1 || f > files_.size()) {
    Fail(ErrorCode::kBadFileIndex, "file " + std::to_string(f) +
                                       " outside [1, " +
                                       std::to_string(files_.size()) + "]");
  }
  return files_[f - 1];
}

const Matrix& DssLayout::node_vector(std::size_t i) const {
  if (i < 1 || i > node_vectors_.size()) {
    Fail(ErrorCode::kBadNodeIndex, "node " + std::to_string(i) +
                                       " outside [1, " +
                                       std::to_string(node_vectors_.size()) +
                                       "]");
  }
  return node_vectors_[i - 1];
}

}  // namespace mdspir
