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

#include "mdspir/field.h"

#include <bit>
#include <string>

#include "mdspir/error.h"

namespace mdspir {

bool IsPrime(std::uint64_t value) {
  if (value < 2) return false;
  if (value % 2 == 0) return value == 2;
  for (std::uint64_t d = 3; d * d <= value; d += 2) {
    if (value % d == 0) return false;
  }
  return true;
}

std::uint32_t NextPrimeAtLeast(std::uint64_t value) {
  std::uint64_t p = value < 2 ? 2 : value;
  while (!IsPrime(p)) ++p;
  return static_cast<std::uint32_t>(p);
}

PrimeField PrimeField::Create(std::uint64_t q) {
  if (q >= (std::uint64_t{1} << 31)) {
    Fail(ErrorCode::kInvalidArgument,
         "q must be below 2^31, got " + std::to_string(q));
  }
  if (!IsPrime(q)) {
    Fail(ErrorCode::kNotPrime, "q must be prime, got " + std::to_string(q));
  }
  return PrimeField(static_cast<std::uint32_t>(q));
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
  const auto bits = static_cast<std::size_t>(std::bit_width(q - 1));
  width_ = bits == 0 ? 1 : (bits + 7) / 8;
}

Elem PrimeField::FromSigned(std::int64_t value) const {
  const std::int64_t r = value % static_cast<std::int64_t>(q_);
  return static_cast<Elem>(r < 0 ? r + q_ : r);
}

Elem PrimeField::Pow(Elem base, std::uint64_t exponent) const {
  Elem result = 1 % q_;
  while (exponent > 0) {
    if (exponent & 1) result = Mul(result, base);
    base = Mul(base, base);
    exponent >>= 1;
  }
  return result;
}

Elem PrimeField::Inverse(Elem a) const {
  if (a % q_ == 0) {
    Fail(ErrorCode::kZeroInverse, "zero has no inverse in GF(" +
                                      std::to_string(q_) + ")");
  }
  return Pow(a, q_ - 2);
}

void PrimeField::AddScaledInto(ExtSymbol& acc, Elem scalar,
                               const ExtSymbol& x) const {
  if (acc.size() != x.size()) {
    Fail(ErrorCode::kDimensionMismatch, "symbol lengths differ");
  }
  if (scalar == 0) return;
  for (std::size_t c = 0; c < acc.size(); ++c) {
    acc[c] = Add(acc[c], Mul(scalar, x[c]));
  }
}

ExtSymbol PrimeField::AddSymbols(const ExtSymbol& a, const ExtSymbol& b) const {
  ExtSymbol out = a;
  AddScaledInto(out, 1, b);
  return out;
}

ExtSymbol PrimeField::SubSymbols(const ExtSymbol& a, const ExtSymbol& b) const {
  ExtSymbol out = a;
  AddScaledInto(out, Neg(1), b);
  return out;
}

ExtSymbol PrimeField::ScaleSymbol(Elem scalar, const ExtSymbol& x) const {
  ExtSymbol out(x.size());
  for (std::size_t c = 0; c < x.size(); ++c) out[c] = Mul(scalar, x[c]);
  return out;
}

}  // namespace mdspir
