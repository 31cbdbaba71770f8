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

#include "mdspir/matrix.h"

#include <algorithm>
#include <string>
#include <utility>

#include "mdspir/error.h"
#include "mdspir/kernels.h"

namespace mdspir {

namespace {

void RequireSameField(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) {
    Fail(ErrorCode::kFieldMismatch, "operands live in different fields");
  }
}

std::string Shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// Reduces `work` to row echelon form in place, applying the same row
// operations to `aug` when given. Returns the pivot column of each pivot row.
std::vector<std::size_t> Eliminate(Matrix& work, Matrix* aug,
                                   bool reduced) {
  const PrimeField& f = work.field();
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < work.cols() && pivot_row < work.rows();
       ++col) {
    std::size_t sel = pivot_row;
    while (sel < work.rows() && work.at(sel, col) == 0) ++sel;
    if (sel == work.rows()) continue;
    if (sel != pivot_row) {
      auto a = work.mutable_row(sel);
      auto b = work.mutable_row(pivot_row);
      std::swap_ranges(a.begin(), a.end(), b.begin());
      if (aug != nullptr) {
        auto c = aug->mutable_row(sel);
        auto d = aug->mutable_row(pivot_row);
        std::swap_ranges(c.begin(), c.end(), d.begin());
      }
    }
    const Elem inv = f.Inverse(work.at(pivot_row, col));
    for (auto& v : work.mutable_row(pivot_row)) v = f.Mul(v, inv);
    if (aug != nullptr) {
      for (auto& v : aug->mutable_row(pivot_row)) v = f.Mul(v, inv);
    }
    const std::size_t first = reduced ? 0 : pivot_row + 1;
    for (std::size_t r = first; r < work.rows(); ++r) {
      if (r == pivot_row) continue;
      const Elem factor = work.at(r, col);
      if (factor == 0) continue;
      const Elem neg = f.Neg(factor);
      auto src = work.row(pivot_row);
      auto dst = work.mutable_row(r);
      for (std::size_t c = col; c < work.cols(); ++c) {
        dst[c] = f.Add(dst[c], f.Mul(neg, src[c]));
      }
      if (aug != nullptr) {
        auto asrc = aug->row(pivot_row);
        auto adst = aug->mutable_row(r);
        for (std::size_t c = 0; c < aug->cols(); ++c) {
          adst[c] = f.Add(adst[c], f.Mul(neg, asrc[c]));
        }
      }
    }
    pivots.push_back(col);
    ++pivot_row;
  }
  return pivots;
}

}  // namespace

Matrix::Matrix(const PrimeField& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::FromRows(
    const PrimeField& field,
    std::initializer_list<std::initializer_list<long long>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(field, r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) {
      Fail(ErrorCode::kDimensionMismatch, "ragged matrix literal");
    }
    std::size_t j = 0;
    for (long long v : row) m.data_[i * c + j++] = field.FromSigned(v);
    ++i;
  }
  return m;
}

Matrix Matrix::FromRows(const PrimeField& field,
                        const std::vector<std::vector<Elem>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) {
      Fail(ErrorCode::kDimensionMismatch, "ragged matrix rows");
    }
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::Identity(const PrimeField& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::FromSymbols(const PrimeField& field,
                           const std::vector<ExtSymbol>& symbols) {
  const std::size_t ell = symbols.empty() ? 0 : symbols.front().size();
  Matrix m(field, symbols.size(), ell);
  for (std::size_t i = 0; i < symbols.size(); ++i) m.set_symbol(i, symbols[i]);
  return m;
}

void Matrix::set_symbol(std::size_t r, const ExtSymbol& s) {
  if (s.size() != cols_) {
    Fail(ErrorCode::kDimensionMismatch,
         "symbol of length " + std::to_string(s.size()) + " into row of " +
             std::to_string(cols_));
  }
  for (std::size_t c = 0; c < cols_; ++c) set(r, c, s[c]);
}

bool Matrix::IsZero() const {
  for (Elem v : data_) {
    if (v != 0) return false;
  }
  return true;
}

Matrix Matrix::Transposed() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
  }
  return t;
}

Matrix Matrix::SelectColumns(std::span<const std::size_t> cols) const {
  Matrix out(field_, rows_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= cols_) {
      Fail(ErrorCode::kDimensionMismatch, "column index out of range");
    }
    for (std::size_t r = 0; r < rows_; ++r) out.data_[r * cols.size() + j] = at(r, cols[j]);
  }
  return out;
}

Matrix Matrix::SelectRows(std::span<const std::size_t> rows) const {
  Matrix out(field_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= rows_) {
      Fail(ErrorCode::kDimensionMismatch, "row index out of range");
    }
    auto src = row(rows[i]);
    std::copy(src.begin(), src.end(), out.mutable_row(i).begin());
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r == 0 ? "[" : " [");
    for (std::size_t c = 0; c < m.cols(); ++c) {
      os << (c == 0 ? "" : ",") << m.at(r, c);
    }
    os << "]";
  }
  return os << "]";
}

Matrix Multiply(const Matrix& a, const Matrix& b) {
  return kernels::Multiply(a, b);
}

Matrix Add(const Matrix& a, const Matrix& b) {
  RequireSameField(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    Fail(ErrorCode::kDimensionMismatch, Shape(a) + " + " + Shape(b));
  }
  Matrix out = a;
  auto dst = out.mutable_data();
  auto src = b.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = a.field().Add(dst[i], src[i]);
  }
  return out;
}

Matrix Subtract(const Matrix& a, const Matrix& b) {
  RequireSameField(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    Fail(ErrorCode::kDimensionMismatch, Shape(a) + " - " + Shape(b));
  }
  Matrix out = a;
  auto dst = out.mutable_data();
  auto src = b.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = a.field().Sub(dst[i], src[i]);
  }
  return out;
}

std::size_t Rank(const Matrix& a) {
  Matrix work = a;
  return Eliminate(work, nullptr, /*reduced=*/false).size();
}

Matrix Solve(const Matrix& a, const Matrix& rhs) {
  RequireSameField(a, rhs);
  if (a.rows() != a.cols()) {
    Fail(ErrorCode::kDimensionMismatch, "solve needs a square system, got " +
                                            Shape(a));
  }
  if (rhs.rows() != a.rows()) {
    Fail(ErrorCode::kDimensionMismatch,
         "rhs has " + std::to_string(rhs.rows()) + " rows, system has " +
             std::to_string(a.rows()));
  }
  Matrix work = a;
  Matrix x = rhs;
  const auto pivots = Eliminate(work, &x, /*reduced=*/true);
  if (pivots.size() != a.rows()) {
    Fail(ErrorCode::kSingularMatrix,
         "rank " + std::to_string(pivots.size()) + " < " +
             std::to_string(a.rows()));
  }
  return x;
}

Matrix Inverse(const Matrix& a) {
  return Solve(a, Matrix::Identity(a.field(), a.rows()));
}

}  // namespace mdspir
