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

#include "mdspir/random.h"

#include <array>

namespace mdspir {

void SeededRandom::Fill(std::span<std::uint8_t> out) {
  std::size_t i = 0;
  while (i < out.size()) {
    std::uint64_t word = engine_();
    for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
      out[i] = static_cast<std::uint8_t>(word & 0xff);
      word >>= 8;
    }
  }
}

void SystemRandom::Fill(std::span<std::uint8_t> out) {
  std::size_t i = 0;
  while (i < out.size()) {
    auto word = static_cast<std::uint32_t>(device_());
    for (int b = 0; b < 4 && i < out.size(); ++b, ++i) {
      out[i] = static_cast<std::uint8_t>(word & 0xff);
      word >>= 8;
    }
  }
}

std::uint64_t AcceptanceBound(const PrimeField& field) {
  const std::uint64_t space = std::uint64_t{1} << (8 * field.element_width());
  const std::uint64_t q = field.modulus();
  return space / q * q;
}

Elem SampleElement(const PrimeField& field, RandomSource& rng) {
  const std::size_t w = field.element_width();
  const std::uint64_t bound = AcceptanceBound(field);
  std::array<std::uint8_t, 8> buf{};
  while (true) {
    rng.Fill(std::span<std::uint8_t>(buf.data(), w));
    std::uint64_t draw = 0;
    for (std::size_t b = 0; b < w; ++b) {
      draw |= static_cast<std::uint64_t>(buf[b]) << (8 * b);
    }
    if (draw < bound) return field.Reduce(draw);
  }
}

Matrix SampleMatrix(const PrimeField& field, std::size_t rows,
                    std::size_t cols, RandomSource& rng) {
  Matrix m(field, rows, cols);
  for (auto& v : m.mutable_data()) v = SampleElement(field, rng);
  return m;
}

}  // namespace mdspir
