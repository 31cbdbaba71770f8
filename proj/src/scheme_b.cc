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

#include "mdspir/scheme_b.h"

#include <optional>
#include <string>
#include <utility>

#include "mdspir/error.h"

namespace mdspir {

SchemeBParams SchemeBParams::Create(const GeneratorMatrix& code,
                                    std::size_t b) {
  if (b < 1) Fail(ErrorCode::kInvalidArgument, "b must be >= 1");
  if (b > code.n() - code.k()) {
    Fail(ErrorCode::kCollusionBoundTooLarge,
         "b = " + std::to_string(b) + " exceeds n - k = " +
             std::to_string(code.n() - code.k()));
  }
  return SchemeBParams(code.Punctured(code.k() + b), b);
}

SubqueryB QueriesBFromRandomness(const SchemeBParams& params, std::size_t m,
                                 std::size_t f, std::size_t i, Matrix u) {
  if (f < 1 || f > m) {
    Fail(ErrorCode::kBadFileIndex,
         "file " + std::to_string(f) + " outside [1, " + std::to_string(m) +
             "]");
  }
  if (i < 1 || i > params.k()) {
    Fail(ErrorCode::kInvalidArgument,
         "subquery " + std::to_string(i) + " outside [1, " +
             std::to_string(params.k()) + "]");
  }
  if (u.rows() != params.b() || u.cols() != m) {
    Fail(ErrorCode::kDimensionMismatch, "U_i must be b x m");
  }
  const PrimeField& field = params.field();
  const std::size_t k = params.k();

  SubqueryB sub{.f = f, .i = i, .u = std::move(u), .vectors = {}};
  // Row l of P' times U_i is q_{l,i}^T for every systematic node at once.
  const Matrix mixed = Multiply(params.restricted_parity(), sub.u);
  for (std::size_t l = 0; l < k; ++l) {
    Matrix q(field, 1, m);
    auto src = mixed.row(l);
    std::copy(src.begin(), src.end(), q.mutable_row(0).begin());
    if (l + 1 == i) q.set(0, f - 1, field.Add(q.at(0, f - 1), 1));
    sub.vectors.push_back(std::move(q));
  }
  for (std::size_t j = 0; j < params.b(); ++j) {
    Matrix q(field, 1, m);
    auto src = sub.u.row(j);
    std::copy(src.begin(), src.end(), q.mutable_row(0).begin());
    sub.vectors.push_back(std::move(q));
  }
  return sub;
}

SubqueryB BuildQueriesB(const SchemeBParams& params, std::size_t m,
                        std::size_t f, std::size_t i, RandomSource& rng) {
  return QueriesBFromRandomness(params, m, f, i,
                                SampleMatrix(params.field(), params.b(), m, rng));
}

ExtSymbol DecodeSymbolB(const SchemeBParams& params,
                        const std::map<std::size_t, ExtSymbol>& responses) {
  const PrimeField& field = params.field();
  std::optional<ExtSymbol> acc;
  for (std::size_t l = 1; l <= params.contacted(); ++l) {
    const auto it = responses.find(l);
    if (it == responses.end()) {
      Fail(ErrorCode::kMissingResponse,
           "no response from node " + std::to_string(l));
    }
    if (!acc) acc = ExtSymbol(it->second.size(), 0);
    field.AddScaledInto(*acc, l <= params.k() ? 1 : field.Neg(1), it->second);
  }
  return *acc;
}

}  // namespace mdspir
