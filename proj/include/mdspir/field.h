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

#ifndef MDSPIR_FIELD_H_
#define MDSPIR_FIELD_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mdspir {

// An element of GF(q), always held in canonical form [0, q).
using Elem = std::uint32_t;

// A data symbol of GF(q^ell), stored as its ell coordinates over GF(q).
// Symbols are only ever added together or scaled by base-field scalars, so no
// extension-field multiplication is needed.
using ExtSymbol = std::vector<Elem>;

bool IsPrime(std::uint64_t value);

// Smallest prime p with p >= value.
std::uint32_t NextPrimeAtLeast(std::uint64_t value);

// Arithmetic in the prime field GF(q), q < 2^31.
class PrimeField {
 public:
  // Throws kNotPrime when q is composite (or < 2) and kInvalidArgument when
  // q does not fit in 31 bits.
  static PrimeField Create(std::uint64_t q);

  std::uint32_t modulus() const { return q_; }

  // Serialized width w in bytes: ceil(bits(q - 1) / 8).
  std::size_t element_width() const { return width_; }

  Elem Reduce(std::uint64_t value) const {
    return static_cast<Elem>(value % q_);
  }
  Elem FromSigned(std::int64_t value) const;

  Elem Add(Elem a, Elem b) const {
    const std::uint32_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Elem Sub(Elem a, Elem b) const { return a >= b ? a - b : a + q_ - b; }
  Elem Neg(Elem a) const { return a == 0 ? 0 : q_ - a; }
  Elem Mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % q_);
  }
  Elem Pow(Elem base, std::uint64_t exponent) const;

  // Throws kZeroInverse for a == 0.
  Elem Inverse(Elem a) const;

  // Coordinate-wise symbol arithmetic; all symbols must share one length.
  void AddScaledInto(ExtSymbol& acc, Elem scalar, const ExtSymbol& x) const;
  ExtSymbol AddSymbols(const ExtSymbol& a, const ExtSymbol& b) const;
  ExtSymbol SubSymbols(const ExtSymbol& a, const ExtSymbol& b) const;
  ExtSymbol ScaleSymbol(Elem scalar, const ExtSymbol& x) const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.q_ == b.q_;
  }

 private:
  explicit PrimeField(std::uint32_t q);

  std::uint32_t q_;
  std::size_t width_;
};

}  // namespace mdspir

#endif  // MDSPIR_FIELD_H_
