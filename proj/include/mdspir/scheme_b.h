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

#ifndef MDSPIR_SCHEME_B_H_
#define MDSPIR_SCHEME_B_H_

#include <cstddef>
#include <map>
#include <vector>

#include "mdspir/matrix.h"
#include "mdspir/mds_code.h"
#include "mdspir/random.h"

// b-collusion retrieval (1 <= b <= n - k) with download cost b + k.
//
// Files are stored unstriped (alpha = 1) and only the first k + b nodes are
// contacted. Subquery i draws a fresh b x m matrix U_i; systematic node l gets
// U_i^T p_l (plus e_f when l = i) where p_l is row l of the parity block
// restricted to its first b columns, and parity node k + j gets row j of U_i.
// The wanted symbol falls out as (sum of systematic answers) - (sum of parity
// answers): both sums equal trace(X U_i^T P^T) apart from x_i^f.
namespace mdspir {

class SchemeBParams {
 public:
  // Throws kCollusionBoundTooLarge if b > n - k, kInvalidArgument if b < 1.
  static SchemeBParams Create(const GeneratorMatrix& code, std::size_t b);

  std::size_t b() const { return b_; }
  std::size_t k() const { return restricted_.k(); }
  std::size_t contacted() const { return restricted_.n(); }  // k + b
  std::size_t d() const { return restricted_.k(); }
  const PrimeField& field() const { return restricted_.field(); }

  // The code punctured to the contacted nodes: [I | P'] with P' k x b.
  const GeneratorMatrix& restricted_code() const { return restricted_; }
  const Matrix& restricted_parity() const { return parity_; }

 private:
  SchemeBParams(GeneratorMatrix restricted, std::size_t b)
      : restricted_(std::move(restricted)),
        parity_(restricted_.parity()),
        b_(b) {}

  GeneratorMatrix restricted_;
  Matrix parity_;
  std::size_t b_;
};

struct SubqueryB {
  std::size_t f;  // 1-based
  std::size_t i;  // 1-based
  Matrix u;       // b x m, fresh per subquery
  // vectors[l - 1] is the 1 x m query row for contacted node l.
  std::vector<Matrix> vectors;
};

// Throws kBadFileIndex, kInvalidArgument (subquery outside [1, k]).
SubqueryB BuildQueriesB(const SchemeBParams& params, std::size_t m,
                        std::size_t f, std::size_t i, RandomSource& rng);

// Same construction for a caller-chosen U_i.
SubqueryB QueriesBFromRandomness(const SchemeBParams& params, std::size_t m,
                                 std::size_t f, std::size_t i, Matrix u);

// responses: contacted node id (1-based) -> r_{l,i}. Throws kMissingResponse.
ExtSymbol DecodeSymbolB(const SchemeBParams& params,
                        const std::map<std::size_t, ExtSymbol>& responses);

}  // namespace mdspir

#endif  // MDSPIR_SCHEME_B_H_
