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

#ifndef MDSPIR_RANDOM_H_
#define MDSPIR_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

#include "mdspir/field.h"
#include "mdspir/matrix.h"

namespace mdspir {

// Byte source behind every random query component.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void Fill(std::span<std::uint8_t> out) = 0;
};

// Deterministic, for tests and reproducible CLI runs.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}
  void Fill(std::span<std::uint8_t> out) override;

 private:
  std::mt19937_64 engine_;
};

// Operating-system entropy for real sessions.
class SystemRandom final : public RandomSource {
 public:
  void Fill(std::span<std::uint8_t> out) override;

 private:
  std::random_device device_;
};

// Uniform sampling from GF(q) by rejection on w-byte little-endian draws.
// Draws at or above AcceptanceBound(field) are discarded, so every residue
// has exactly AcceptanceBound / q preimages.
std::uint64_t AcceptanceBound(const PrimeField& field);
Elem SampleElement(const PrimeField& field, RandomSource& rng);
Matrix SampleMatrix(const PrimeField& field, std::size_t rows,
                    std::size_t cols, RandomSource& rng);

}  // namespace mdspir

#endif  // MDSPIR_RANDOM_H_
