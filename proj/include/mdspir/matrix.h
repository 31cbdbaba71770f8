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

#ifndef MDSPIR_MATRIX_H_
#define MDSPIR_MATRIX_H_

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include "mdspir/field.h"

namespace mdspir {

// Dense row-major matrix over GF(q).
//
// The same type doubles as a list of data symbols: a matrix with ell columns
// holds one ExtSymbol per row. Node data vectors, stripes and responses are all
// represented this way, which turns the node projection R = Q w into a plain
// matrix product.
class Matrix {
 public:
  Matrix(const PrimeField& field, std::size_t rows, std::size_t cols);

  // Entries are reduced mod q, negative values included.
  static Matrix FromRows(
      const PrimeField& field,
      std::initializer_list<std::initializer_list<long long>> rows);
  static Matrix FromRows(const PrimeField& field,
                         const std::vector<std::vector<Elem>>& rows);
  static Matrix Identity(const PrimeField& field, std::size_t n);
  // Stacks symbols as rows; all must share one length.
  static Matrix FromSymbols(const PrimeField& field,
                            const std::vector<ExtSymbol>& symbols);

  const PrimeField& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Elem v) {
    data_[r * cols_ + c] = field_.Reduce(v);
  }

  std::span<const Elem> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Elem> mutable_row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  ExtSymbol symbol(std::size_t r) const {
    return ExtSymbol(row(r).begin(), row(r).end());
  }
  void set_symbol(std::size_t r, const ExtSymbol& s);

  std::span<const Elem> data() const { return data_; }
  std::span<Elem> mutable_data() { return data_; }

  bool IsZero() const;
  Matrix Transposed() const;
  Matrix SelectColumns(std::span<const std::size_t> cols) const;
  Matrix SelectRows(std::span<const std::size_t> rows) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.data_ == b.data_;
  }

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

// a * b. Throws kDimensionMismatch / kFieldMismatch.
Matrix Multiply(const Matrix& a, const Matrix& b);
Matrix Add(const Matrix& a, const Matrix& b);
Matrix Subtract(const Matrix& a, const Matrix& b);

// Rank over GF(q) by Gaussian elimination, first nonzero pivot in row order.
std::size_t Rank(const Matrix& a);

// Solves a x = rhs for square nonsingular a. rhs may carry any number of
// columns (one per ExtSymbol coordinate); the elimination is done once and
// applied to every column. Throws kSingularMatrix.
Matrix Solve(const Matrix& a, const Matrix& rhs);

Matrix Inverse(const Matrix& a);

}  // namespace mdspir

#endif  // MDSPIR_MATRIX_H_
