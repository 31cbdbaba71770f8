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

#include "mdspir/kernels.h"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "mdspir/error.h"

namespace mdspir::kernels {

namespace {

constexpr std::size_t kColumnBlock = 256;

void CheckOperands(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) {
    Fail(ErrorCode::kFieldMismatch, "operands live in different fields");
  }
  if (a.cols() != b.rows()) {
    Fail(ErrorCode::kDimensionMismatch,
         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " * " +
             std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

Matrix MultiplySerial(const Matrix& a, const Matrix& b) {
  CheckOperands(a, b);
  const std::uint64_t q = a.field().modulus();
  Matrix out(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::uint64_t acc = 0;
      for (std::size_t t = 0; t < a.cols(); ++t) {
        acc = (acc + static_cast<std::uint64_t>(a.at(i, t)) * b.at(t, j)) % q;
      }
      out.set(i, j, static_cast<Elem>(acc));
    }
  }
  return out;
}

Matrix MultiplyParallel(const Matrix& a, const Matrix& b) {
  CheckOperands(a, b);
  const std::uint64_t q = a.field().modulus();
  Matrix out(a.field(), a.rows(), b.cols());
  const std::size_t rows = a.rows();
  const std::size_t inner = a.cols();
  const std::size_t cols = b.cols();
  const std::size_t blocks = (cols + kColumnBlock - 1) / kColumnBlock;
  const auto lhs = a.data();
  const auto rhs = b.data();
  auto dst = out.mutable_data();

#pragma omp parallel
  {
    std::vector<std::uint64_t> acc(kColumnBlock);
#pragma omp for collapse(2) schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(rows); ++i) {
      for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(blocks);
           ++blk) {
        const std::size_t c0 = static_cast<std::size_t>(blk) * kColumnBlock;
        const std::size_t c1 = std::min(cols, c0 + kColumnBlock);
        std::fill(acc.begin(), acc.begin() + (c1 - c0), 0);
        for (std::size_t t = 0; t < inner; ++t) {
          const std::uint64_t coef = lhs[static_cast<std::size_t>(i) * inner + t];
          if (coef == 0) continue;
          const Elem* src = rhs.data() + t * cols;
          for (std::size_t c = c0; c < c1; ++c) {
            acc[c - c0] = (acc[c - c0] + coef * src[c]) % q;
          }
        }
        Elem* out_row = dst.data() + static_cast<std::size_t>(i) * cols;
        for (std::size_t c = c0; c < c1; ++c) {
          out_row[c] = static_cast<Elem>(acc[c - c0]);
        }
      }
    }
  }
  return out;
}

Matrix Multiply(const Matrix& a, const Matrix& b) {
  if (a.rows() * b.cols() * std::max<std::size_t>(a.cols(), 1) >=
      kParallelMultiplyThreshold) {
    return MultiplyParallel(a, b);
  }
  return MultiplySerial(a, b);
}

Matrix Multiply(const Matrix& a, const Matrix& b, Mode mode) {
  switch (mode) {
    case Mode::kSerial: return MultiplySerial(a, b);
    case Mode::kParallel: return MultiplyParallel(a, b);
    case Mode::kAuto: break;
  }
  return kernels::Multiply(a, b);
}

}  // namespace mdspir::kernels
