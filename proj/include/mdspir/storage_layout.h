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

#ifndef MDSPIR_STORAGE_LAYOUT_H_
#define MDSPIR_STORAGE_LAYOUT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mdspir/field.h"
#include "mdspir/kernels.h"
#include "mdspir/matrix.h"
#include "mdspir/mds_code.h"

namespace mdspir {

// One file X^f as a k x alpha grid of ell-coordinate symbols. Cell (row,
// stripe) is x^f_{row+1, stripe+1}; row j lives on systematic node j.
class FileObject {
 public:
  FileObject(const PrimeField& field, std::size_t k, std::size_t alpha,
             std::size_t ell);

  std::size_t k() const { return k_; }
  std::size_t alpha() const { return alpha_; }
  std::size_t ell() const { return symbols_.cols(); }
  const PrimeField& field() const { return symbols_.field(); }

  // Bytes (byte mode) or field elements (symbol mode) before zero padding.
  std::uint64_t original_length() const { return original_length_; }
  void set_original_length(std::uint64_t len) { original_length_ = len; }

  ExtSymbol cell(std::size_t row, std::size_t stripe) const {
    return symbols_.symbol(stripe * k_ + row);
  }
  void set_cell(std::size_t row, std::size_t stripe, const ExtSymbol& s) {
    symbols_.set_symbol(stripe * k_ + row, s);
  }

  // k x ell, the systematic symbols of one stripe.
  Matrix stripe(std::size_t s) const;

  // All cells, stripe-major: row stripe * k + row.
  const Matrix& symbols() const { return symbols_; }

  friend bool operator==(const FileObject& a, const FileObject& b) {
    return a.k_ == b.k_ && a.alpha_ == b.alpha_ &&
           a.original_length_ == b.original_length_ &&
           a.symbols_ == b.symbols_;
  }

 private:
  std::size_t k_;
  std::size_t alpha_;
  std::uint64_t original_length_ = 0;
  Matrix symbols_;
};

// Number of coordinates needed to hold `count` elements in a k x alpha grid.
std::size_t ExtensionDegreeFor(std::uint64_t count, std::size_t k,
                               std::size_t alpha);

// Byte mode: one byte per field element (needs q >= 257). Elements fill the
// grid column-major (stripe 1 first), each cell taking ell consecutive
// elements; the tail is zero padded. `ell` defaults to the smallest degree
// that fits. Throws kFieldTooSmallForBytes, kShapeMismatch.
FileObject IngestBytes(std::span<const std::uint8_t> raw,
                       const CodeParams& code, std::size_t alpha,
                       std::optional<std::size_t> ell = std::nullopt);
std::vector<std::uint8_t> ExtractBytes(const FileObject& file);

// Symbol mode: explicit field elements, same fill order as byte mode.
FileObject IngestSymbols(std::span<const Elem> values, const CodeParams& code,
                         std::size_t alpha,
                         std::optional<std::size_t> ell = std::nullopt);
std::vector<Elem> ExtractSymbols(const FileObject& file);

// The encoded state of the whole system. Node i stores w_i, an (m alpha) x ell
// matrix whose row (f-1) alpha + s holds node i's coded symbol of stripe s of
// file f: files outer, stripes inner.
class DssLayout {
 public:
  // Throws kShapeMismatch unless every file is k x alpha with one shared ell.
  static DssLayout Build(const GeneratorMatrix& code,
                         std::vector<FileObject> files,
                         kernels::Mode mode = kernels::Mode::kAuto);

  const GeneratorMatrix& code() const { return code_; }
  std::size_t n() const { return code_.n(); }
  std::size_t k() const { return code_.k(); }
  std::size_t m() const { return files_.size(); }
  std::size_t alpha() const { return alpha_; }
  std::size_t ell() const { return ell_; }
  const std::vector<FileObject>& files() const { return files_; }
  // 1-based. Throws kBadFileIndex.
  const FileObject& file(std::size_t f) const;

  // w_i, 1-based. Throws kBadNodeIndex.
  const Matrix& node_vector(std::size_t i) const;
  const std::vector<Matrix>& node_vectors() const { return node_vectors_; }

 private:
  DssLayout(GeneratorMatrix code, std::vector<FileObject> files,
            std::size_t alpha, std::size_t ell)
      : code_(std::move(code)),
        files_(std::move(files)),
        alpha_(alpha),
        ell_(ell) {}

  GeneratorMatrix code_;
  std::vector<FileObject> files_;
  std::size_t alpha_;
  std::size_t ell_;
  std::vector<Matrix> node_vectors_;
};

}  // namespace mdspir

#endif  // MDSPIR_STORAGE_LAYOUT_H_
