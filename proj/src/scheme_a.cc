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

#include "mdspir/scheme_a.h"

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "mdspir/error.h"

namespace mdspir {

namespace {

// Column of the single 1 in row `row` of v, if any.
std::optional<std::size_t> DisplacedColumn(const Matrix& v, std::size_t row) {
  auto r = v.row(row);
  for (std::size_t c = 0; c < r.size(); ++c) {
    if (r[c] != 0) return c;
  }
  return std::nullopt;
}

void CheckShape(const SchemeAParams& params, const DisplacementSet& ds) {
  if (ds.v.size() != params.n()) {
    Fail(ErrorCode::kShapeMismatch, "displacement set has " +
                                        std::to_string(ds.v.size()) +
                                        " matrices, n = " +
                                        std::to_string(params.n()));
  }
}

}  // namespace

SchemeAParams SchemeAParams::Derive(const CodeParams& code) {
  const std::size_t alpha = code.n() - code.k();
  return SchemeAParams{
      .code = code,
      .alpha = alpha,
      .d = code.k(),
      .beta = alpha / code.k(),
      .r = alpha % code.k(),
  };
}

DisplacementSet BuildDisplacements(const SchemeAParams& params, std::size_t m,
                                   std::size_t f) {
  if (f < 1 || f > m) {
    Fail(ErrorCode::kBadFileIndex,
         "file " + std::to_string(f) + " outside [1, " + std::to_string(m) +
             "]");
  }
  const PrimeField& field = params.code.field();
  const std::size_t k = params.k();
  const std::size_t width = m * params.alpha;
  const std::size_t base = (f - 1) * params.alpha;

  DisplacementSet ds{.m = m, .f = f, .v = {}};
  ds.v.assign(params.n(), Matrix(field, params.d, width));

  // Systematic node i (0-based) is V_1 shifted down i rows: row (j + i) mod k
  // carries V_1's row j, i.e. a 1 at stripe j for j < r.
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < params.r; ++j) {
      ds.v[i].set((j + i) % k, base + j, 1);
    }
  }
  for (std::size_t s = 1; s <= params.beta; ++s) {
    for (std::size_t node = s * k; node < s * k + k; ++node) {
      for (std::size_t j = 0; j < k; ++j) {
        ds.v[node].set(j, base + params.r + (s - 1) * k + j, 1);
      }
    }
  }
  return ds;
}

QuerySetA QueriesFromRandomness(const DisplacementSet& displacements,
                                Matrix u) {
  QuerySetA qs{.u = std::move(u), .queries = {}};
  qs.queries.reserve(displacements.v.size());
  for (const Matrix& v : displacements.v) qs.queries.push_back(Add(qs.u, v));
  return qs;
}

QuerySetA BuildQueriesA(const SchemeAParams& params,
                        const DisplacementSet& displacements,
                        RandomSource& rng) {
  CheckShape(params, displacements);
  Matrix u = SampleMatrix(params.code.field(), params.d,
                          displacements.m * params.alpha, rng);
  return QueriesFromRandomness(displacements, std::move(u));
}

std::vector<RecoveredCell> DecodeSubqueryA(const SchemeAParams& params,
                                           const GeneratorMatrix& code,
                                           const DisplacementSet& displacements,
                                           std::size_t i,
                                           const Matrix& subresponses) {
  CheckShape(params, displacements);
  const std::size_t n = params.n();
  const std::size_t k = params.k();
  if (i < 1 || i > params.d) {
    Fail(ErrorCode::kInvalidArgument,
         "subquery " + std::to_string(i) + " outside [1, " +
             std::to_string(params.d) + "]");
  }
  if (subresponses.rows() != n) {
    Fail(ErrorCode::kDimensionMismatch,
         std::to_string(subresponses.rows()) + " sub-responses for " +
             std::to_string(n) + " nodes");
  }
  const PrimeField& field = code.field();
  const std::size_t row = i - 1;
  const std::size_t base = (displacements.f - 1) * params.alpha;

  std::vector<std::size_t> interference_nodes;
  std::map<std::size_t, std::vector<std::size_t>> nodes_by_stripe;
  for (std::size_t l = 0; l < n; ++l) {
    const auto col = DisplacedColumn(displacements.v[l], row);
    if (!col) {
      interference_nodes.push_back(l);
      continue;
    }
    if (*col < base || *col >= base + params.alpha) {
      Fail(ErrorCode::kShapeMismatch,
           "displacement of node " + std::to_string(l + 1) +
               " falls outside the wanted file");
    }
    nodes_by_stripe[*col - base].push_back(l);
  }
  if (interference_nodes.size() != k) {
    Fail(ErrorCode::kSingularInterferenceSystem,
         std::to_string(interference_nodes.size()) +
             " interference-only nodes in subquery " + std::to_string(i) +
             ", need k = " + std::to_string(k));
  }

  // Node l answers sum_j lambda_{j,l} I_j (plus its wanted symbol), so the
  // interference-only nodes give a k x k system with Lambda's columns as rows.
  const Matrix system =
      code.lambda().SelectColumns(interference_nodes).Transposed();
  Matrix interference(field, k, subresponses.cols());
  try {
    interference = Solve(system, subresponses.SelectRows(interference_nodes));
  } catch (const PirError& e) {
    if (e.code() != ErrorCode::kSingularMatrix) throw;
    Fail(ErrorCode::kSingularInterferenceSystem,
         "interference system of subquery " + std::to_string(i) +
             " is singular; Lambda is not MDS");
  }
  // Interference seen by every node: Lambda^T I.
  const Matrix seen = Multiply(code.lambda().Transposed(), interference);

  std::vector<RecoveredCell> cells;
  for (const auto& [stripe, nodes] : nodes_by_stripe) {
    std::map<std::size_t, ExtSymbol> coded;
    for (std::size_t l : nodes) {
      coded[l + 1] = field.SubSymbols(subresponses.symbol(l), seen.symbol(l));
    }
    if (nodes.size() >= k) {
      const Matrix decoded = ErasureDecodeStripe(code, coded);
      for (std::size_t j = 0; j < k; ++j) {
        cells.push_back({j, stripe, decoded.symbol(j)});
      }
      continue;
    }
    for (const auto& [node, value] : coded) {
      if (node > k) {
        Fail(ErrorCode::kShapeMismatch,
             "stripe " + std::to_string(stripe + 1) + " has only " +
                 std::to_string(nodes.size()) + " coded symbols");
      }
      cells.push_back({node - 1, stripe, value});
    }
  }
  return cells;
}

FileObject AssembleFileA(const SchemeAParams& params,
                         const GeneratorMatrix& code,
                         const DisplacementSet& displacements,
                         const std::vector<Matrix>& responses) {
  const std::size_t n = params.n();
  if (responses.size() != n) {
    Fail(ErrorCode::kMissingResponse, std::to_string(responses.size()) +
                                          " responses for " +
                                          std::to_string(n) + " nodes");
  }
  const std::size_t ell = responses.front().cols();
  for (const Matrix& r : responses) {
    if (r.rows() != params.d || r.cols() != ell) {
      Fail(ErrorCode::kDimensionMismatch, "response is not d x ell");
    }
  }
  FileObject file(code.field(), params.k(), params.alpha, ell);
  std::vector<bool> seen(params.k() * params.alpha, false);
  for (std::size_t i = 1; i <= params.d; ++i) {
    Matrix sub(code.field(), n, ell);
    for (std::size_t l = 0; l < n; ++l) {
      auto src = responses[l].row(i - 1);
      std::copy(src.begin(), src.end(), sub.mutable_row(l).begin());
    }
    for (const RecoveredCell& cell :
         DecodeSubqueryA(params, code, displacements, i, sub)) {
      const std::size_t idx = cell.stripe * params.k() + cell.row;
      if (seen[idx]) {
        Fail(ErrorCode::kShapeMismatch, "cell recovered twice");
      }
      seen[idx] = true;
      file.set_cell(cell.row, cell.stripe, cell.value);
    }
  }
  for (bool b : seen) {
    if (!b) Fail(ErrorCode::kShapeMismatch, "cell never recovered");
  }
  return file;
}

std::vector<std::vector<std::size_t>> RetrievalPattern(
    const SchemeAParams& params, const DisplacementSet& displacements) {
  CheckShape(params, displacements);
  const std::size_t base = (displacements.f - 1) * params.alpha;
  std::vector<std::vector<std::size_t>> labels(
      params.alpha, std::vector<std::size_t>(params.n(), 0));
  for (std::size_t node = 0; node < params.n(); ++node) {
    for (std::size_t row = 0; row < params.d; ++row) {
      const auto col = DisplacedColumn(displacements.v[node], row);
      if (col) labels[*col - base][node] = row + 1;
    }
  }
  return labels;
}

}  // namespace mdspir
