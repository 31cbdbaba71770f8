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

#ifndef MDSPIR_SCHEME_A_H_
#define MDSPIR_SCHEME_A_H_

#include <cstddef>
#include <vector>

#include "mdspir/matrix.h"
#include "mdspir/mds_code.h"
#include "mdspir/random.h"
#include "mdspir/storage_layout.h"

// Single-spy retrieval (b = 1) with download cost n / (n - k).
//
// Each file is split into alpha = n - k stripes and the user sends every node
// a d x (m alpha) query Q_i = U + V_i with d = k. U is uniform; the 0/1
// displacement V_i decides which of the wanted file's symbols subquery j pulls
// from node i. The last r nodes get plain U and, together with k - r
// systematic nodes that carry no displacement in that row, expose the
// interference terms I_l = u_j w_l, which are solved for and cancelled.
namespace mdspir {

struct SchemeAParams {
  // Throws kInvalidArgument unless 1 <= k < n.
  static SchemeAParams Derive(const CodeParams& code);

  CodeParams code;
  std::size_t alpha;  // n - k stripes per file
  std::size_t d;      // k subqueries
  std::size_t beta;   // alpha = beta * k + r, 0 <= r < k
  std::size_t r;

  std::size_t n() const { return code.n(); }
  std::size_t k() const { return code.k(); }
};

// The n displacement matrices for one request, each d x (m alpha).
struct DisplacementSet {
  std::size_t m;
  std::size_t f;  // 1-based
  std::vector<Matrix> v;
};

// V_1 holds I_r in its top rows at column offset (f-1) alpha; V_i for the
// other systematic nodes is V_{i-1} rotated down one row. Parity group s
// (nodes s k + 1 .. s k + k) shares I_k at offset (f-1) alpha + r + (s-1) k,
// and the last r nodes get zero. With r = 0 every systematic V_i is zero.
// Throws kBadFileIndex.
DisplacementSet BuildDisplacements(const SchemeAParams& params, std::size_t m,
                                   std::size_t f);

struct QuerySetA {
  Matrix u;                     // d x (m alpha), shared by all nodes
  std::vector<Matrix> queries;  // Q_1 .. Q_n
};

QuerySetA BuildQueriesA(const SchemeAParams& params,
                        const DisplacementSet& displacements,
                        RandomSource& rng);

// Q_i = U + V_i for a caller-chosen U.
QuerySetA QueriesFromRandomness(const DisplacementSet& displacements,
                                Matrix u);

// A symbol of the wanted file recovered by one subquery. row and stripe are
// 0-based grid positions, as in FileObject::cell.
struct RecoveredCell {
  std::size_t row;
  std::size_t stripe;
  ExtSymbol value;
};

// Decodes subquery i (1-based) from the n sub-responses (row l - 1 of
// `subresponses` is node l's answer to row i of its query). Which cell each
// node carries is read off the displacement matrices, so this stays in step
// with BuildDisplacements. Returns alpha cells.
// Throws kSingularInterferenceSystem if Lambda is not MDS.
std::vector<RecoveredCell> DecodeSubqueryA(const SchemeAParams& params,
                                           const GeneratorMatrix& code,
                                           const DisplacementSet& displacements,
                                           std::size_t i,
                                           const Matrix& subresponses);

// Runs every subquery over the full responses (R_l = Q_l w_l, d x ell each)
// and checks that each of the k alpha cells was recovered exactly once.
FileObject AssembleFileA(const SchemeAParams& params,
                         const GeneratorMatrix& code,
                         const DisplacementSet& displacements,
                         const std::vector<Matrix>& responses);

// labels[stripe][node] = subquery (1-based) that retrieves that coded symbol
// of the wanted file, or 0 if none. Both indices 0-based.
std::vector<std::vector<std::size_t>> RetrievalPattern(
    const SchemeAParams& params, const DisplacementSet& displacements);

}  // namespace mdspir

#endif  // MDSPIR_SCHEME_A_H_
