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

#ifndef MDSPIR_MDS_CODE_H_
#define MDSPIR_MDS_CODE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mdspir/combinatorics.h"
#include "mdspir/field.h"
#include "mdspir/matrix.h"

namespace mdspir {

// (n, k) over GF(q) with 1 <= k < n.
class CodeParams {
 public:
  // Throws kInvalidArgument ("k must be < n", "k must be >= 1").
  static CodeParams Create(std::size_t n, std::size_t k,
                           const PrimeField& field);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t redundancy() const { return n_ - k_; }
  const PrimeField& field() const { return field_; }
  Ratio rate() const { return Ratio::Of(k_, n_); }

 private:
  CodeParams(std::size_t n, std::size_t k, const PrimeField& field)
      : n_(n), k_(k), field_(field) {}

  std::size_t n_;
  std::size_t k_;
  PrimeField field_;
};

// Smallest prime >= 2n - 1, the default field for an n-node code.
std::uint32_t DefaultModulus(std::size_t n);

// Outcome of an MDS check. On failure `rows`/`cols` name the first singular
// square submatrix found (0-based; rows index Lambda rows, cols index either
// Lambda columns or parity columns depending on `kind`).
struct MdsReport {
  enum class Kind { kNone, kLambdaColumns, kParitySubmatrix };

  bool pass = true;
  Kind kind = Kind::kNone;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::uint64_t checked = 0;

  std::string Describe() const;
};

// Submatrix checks allowed before kBudgetExceeded (only enforced for n > 16;
// smaller codes are always checked exhaustively).
inline constexpr std::uint64_t kDefaultMdsBudget = 2'000'000;

// Checks a systematic k x n Lambda: every k x k column subset invertible and
// every square submatrix of the parity block P nonsingular.
// Throws kNotSystematic, kBudgetExceeded.
MdsReport ValidateMds(const Matrix& lambda,
                      std::uint64_t budget = kDefaultMdsBudget);

// Systematic MDS generator Lambda = [I | P].
class GeneratorMatrix {
 public:
  // Accepts a user-supplied Lambda after ValidateMds passes.
  // Throws kNotSystematic, kNotMds.
  static GeneratorMatrix FromLambda(const Matrix& lambda);

  const CodeParams& params() const { return params_; }
  const PrimeField& field() const { return params_.field(); }
  std::size_t n() const { return params_.n(); }
  std::size_t k() const { return params_.k(); }

  // k x n.
  const Matrix& lambda() const { return lambda_; }
  // k x (n - k).
  Matrix parity() const;
  // lambda_{row, node}, both 0-based.
  Elem coefficient(std::size_t row, std::size_t node) const {
    return lambda_.at(row, node);
  }

  // The code restricted to its first n' nodes; punctured MDS codes stay MDS.
  GeneratorMatrix Punctured(std::size_t n_prime) const;

 private:
  friend GeneratorMatrix BuildCauchyGenerator(const CodeParams& params);

  GeneratorMatrix(CodeParams params, Matrix lambda)
      : params_(std::move(params)), lambda_(std::move(lambda)) {}

  CodeParams params_;
  Matrix lambda_;
};

// P[i][j] = (x_i + y_j)^-1 with x_i = i, y_j = k + j (0-based).
// Throws kFieldTooSmall when the points collide mod q or a sum vanishes.
GeneratorMatrix BuildCauchyGenerator(const CodeParams& params);

// Cauchy when the field allows it; otherwise the lexicographically first
// parity block (entries scanned row-major from 1) whose square submatrices
// are all nonsingular. Throws kFieldTooSmall when neither exists within budget.
GeneratorMatrix BuildDefaultGenerator(const CodeParams& params);

// stripe: k x ell (row j = symbol on systematic node j). Returns n x ell.
Matrix EncodeStripe(const GeneratorMatrix& g, const Matrix& stripe);

// Recovers the k systematic symbols from any >= k coded ones. Keys are
// 1-based node ids. Throws kTooFewSymbols, kBadNodeIndex,
// kInconsistentSymbols.
Matrix ErasureDecodeStripe(const GeneratorMatrix& g,
                           const std::map<std::size_t, ExtSymbol>& available);

}  // namespace mdspir

#endif  // MDSPIR_MDS_CODE_H_
