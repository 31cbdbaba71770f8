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

#ifndef MDSPIR_KERNELS_H_
#define MDSPIR_KERNELS_H_

#include <cstddef>
#include <exception>
#include <mutex>

#include "mdspir/matrix.h"

// Data-parallel inner loops. Each OpenMP kernel has a serial reference twin
// that the tests hold it to, and bench/ compares the two.
namespace mdspir::kernels {

enum class Mode { kAuto, kSerial, kParallel };

// Textbook triple loop. Reference for MultiplyParallel.
Matrix MultiplySerial(const Matrix& a, const Matrix& b);

// Splits the output into (row, column-block) tiles across OpenMP threads.
Matrix MultiplyParallel(const Matrix& a, const Matrix& b);

// Picks the parallel kernel once the product is large enough to amortize the
// thread team.
Matrix Multiply(const Matrix& a, const Matrix& b);
Matrix Multiply(const Matrix& a, const Matrix& b, Mode mode);

// Output-element count above which Multiply goes parallel.
inline constexpr std::size_t kParallelMultiplyThreshold = 1 << 15;

// Runs body(i) for i in [0, count) on the OpenMP team. Exceptions cannot leave
// an OpenMP region, so the first one thrown is captured and rethrown here.
template <typename Body>
void ParallelFor(std::size_t count, Body&& body) {
  std::exception_ptr failure;
  std::mutex failure_mu;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

template <typename Body>
void SerialFor(std::size_t count, Body&& body) {
  for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace mdspir::kernels

#endif  // MDSPIR_KERNELS_H_
