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

#ifndef MDSPIR_COMBINATORICS_H_
#define MDSPIR_COMBINATORICS_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <span>
#include <vector>

namespace mdspir {

// C(n, r), saturating at `cap` so budget checks never overflow.
inline std::uint64_t BinomialCapped(std::uint64_t n, std::uint64_t r,
                                    std::uint64_t cap) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // Exact: result * (n - r + i) / i is C(n - r + i, i).
    result = result * (n - r + i) / i;
    if (result >= cap) return cap;
  }
  return static_cast<std::uint64_t>(result);
}

// Calls fn(subset) for every r-subset of {0..n-1} in lexicographic order.
// fn returns false to stop early; the function then returns false too.
template <typename Fn>
bool ForEachCombination(std::size_t n, std::size_t r, Fn&& fn) {
  if (r > n) return true;
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!fn(std::span<const std::size_t>(idx))) return false;
    std::size_t pos = r;
    while (pos > 0 && idx[pos - 1] == n - r + pos - 1) --pos;
    if (pos == 0) return true;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// All r-subsets of {0..n-1}, lexicographic.
inline std::vector<std::vector<std::size_t>> Combinations(std::size_t n,
                                                          std::size_t r) {
  std::vector<std::vector<std::size_t>> out;
  ForEachCombination(n, r, [&](std::span<const std::size_t> s) {
    out.emplace_back(s.begin(), s.end());
    return true;
  });
  return out;
}

// Exact non-negative fraction, always kept in lowest terms.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Ratio Of(std::uint64_t num, std::uint64_t den) {
    const std::uint64_t g = std::gcd(num, den);
    return g == 0 ? Ratio{0, 1} : Ratio{num / g, den / g};
  }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Ratio& r) {
  return os << r.num << "/" << r.den;
}

}  // namespace mdspir

#endif  // MDSPIR_COMBINATORICS_H_
