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

#include "mdspir/mds_code.h"

#include <numeric>
#include <sstream>
#include <utility>

#include "mdspir/error.h"

namespace mdspir {

namespace {

constexpr std::uint64_t kSearchBudget = 2'000'000;

bool IsSystematic(const Matrix& lambda) {
  const std::size_t k = lambda.rows();
  if (k == 0 || lambda.cols() <= k) return false;
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      if (lambda.at(r, c) != (r == c ? 1u : 0u)) return false;
    }
  }
  return true;
}

Matrix Submatrix(const Matrix& m, std::span<const std::size_t> rows,
                 std::span<const std::size_t> cols) {
  return m.SelectRows(rows).SelectColumns(cols);
}

std::string JoinOneBased(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    os << (i ? "," : "") << v[i] + 1;
  }
  return os.str();
}

// Row-major backtracking over parity entries. Each square submatrix is tested
// exactly once, when its bottom-right cell is assigned.
class ParitySearch {
 public:
  ParitySearch(const PrimeField& field, std::size_t rows, std::size_t cols)
      : field_(field), p_(field, rows, cols) {}

  bool Run() { return Fill(0); }
  const Matrix& result() const { return p_; }

 private:
  bool CellOk(std::size_t i, std::size_t j) {
    const std::size_t max_s = std::min(i, j) + 1;
    for (std::size_t s = 2; s <= max_s; ++s) {
      bool ok = true;
      ForEachCombination(i, s - 1, [&](std::span<const std::size_t> rs) {
        std::vector<std::size_t> rows(rs.begin(), rs.end());
        rows.push_back(i);
        return ForEachCombination(j, s - 1, [&](std::span<const std::size_t> cs) {
          std::vector<std::size_t> cols(cs.begin(), cs.end());
          cols.push_back(j);
          if (Rank(Submatrix(p_, rows, cols)) != s) ok = false;
          return ok;
        });
      });
      if (!ok) return false;
    }
    return true;
  }

  bool Fill(std::size_t cell) {
    if (cell == p_.rows() * p_.cols()) return true;
    const std::size_t i = cell / p_.cols();
    const std::size_t j = cell % p_.cols();
    for (Elem v = 1; v < field_.modulus(); ++v) {
      if (++visited_ > kSearchBudget) return false;
      p_.set(i, j, v);
      if (CellOk(i, j) && Fill(cell + 1)) return true;
    }
    p_.set(i, j, 0);
    return false;
  }

  PrimeField field_;
  Matrix p_;
  std::uint64_t visited_ = 0;
};

Matrix Systematic(const Matrix& parity) {
  const std::size_t k = parity.rows();
  Matrix lambda(parity.field(), k, k + parity.cols());
  for (std::size_t r = 0; r < k; ++r) {
    lambda.set(r, r, 1);
    for (std::size_t c = 0; c < parity.cols(); ++c) {
      lambda.set(r, k + c, parity.at(r, c));
    }
  }
  return lambda;
}

}  // namespace

CodeParams CodeParams::Create(std::size_t n, std::size_t k,
                              const PrimeField& field) {
  if (k < 1) Fail(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (k >= n) Fail(ErrorCode::kInvalidArgument, "k must be < n");
  if (n > 0xffff) Fail(ErrorCode::kInvalidArgument, "n must fit in 16 bits");
  return CodeParams(n, k, field);
}

std::uint32_t DefaultModulus(std::size_t n) {
  return NextPrimeAtLeast(2 * static_cast<std::uint64_t>(n) - 1);
}

std::string MdsReport::Describe() const {
  if (pass) return "mds=pass checked=" + std::to_string(checked);
  std::ostringstream os;
  os << "mds=fail checked=" << checked << " singular=";
  if (kind == Kind::kLambdaColumns) {
    os << "lambda_columns{" << JoinOneBased(cols) << "}";
  } else {
    os << "parity_rows{" << JoinOneBased(rows) << "}cols{"
       << JoinOneBased(cols) << "}";
  }
  return os.str();
}

MdsReport ValidateMds(const Matrix& lambda, std::uint64_t budget) {
  if (!IsSystematic(lambda)) {
    Fail(ErrorCode::kNotSystematic,
         "generator must be k x n with a leading identity block");
  }
  const std::size_t k = lambda.rows();
  const std::size_t n = lambda.cols();
  const std::size_t c = n - k;

  constexpr std::uint64_t kCap = std::uint64_t{1} << 62;
  std::uint64_t total = BinomialCapped(n, k, kCap);
  for (std::size_t s = 1; s <= std::min(k, c); ++s) {
    const std::uint64_t a = BinomialCapped(k, s, kCap);
    const std::uint64_t b = BinomialCapped(c, s, kCap);
    total = (b != 0 && a > kCap / b) ? kCap : std::min(kCap, total + a * b);
  }
  if (n > 16 && total > budget) {
    Fail(ErrorCode::kBudgetExceeded,
         std::to_string(total) + " submatrix checks exceed budget " +
             std::to_string(budget));
  }

  MdsReport report;
  ForEachCombination(n, k, [&](std::span<const std::size_t> cols) {
    ++report.checked;
    if (Rank(lambda.SelectColumns(cols)) != k) {
      report.pass = false;
      report.kind = MdsReport::Kind::kLambdaColumns;
      report.cols.assign(cols.begin(), cols.end());
      return false;
    }
    return true;
  });
  if (!report.pass) return report;

  std::vector<std::size_t> parity_cols(c);
  std::iota(parity_cols.begin(), parity_cols.end(), k);
  const Matrix p = lambda.SelectColumns(parity_cols);
  for (std::size_t s = 1; s <= std::min(k, c) && report.pass; ++s) {
    ForEachCombination(k, s, [&](std::span<const std::size_t> rows) {
      return ForEachCombination(c, s, [&](std::span<const std::size_t> cols) {
        ++report.checked;
        if (Rank(Submatrix(p, rows, cols)) != s) {
          report.pass = false;
          report.kind = MdsReport::Kind::kParitySubmatrix;
          report.rows.assign(rows.begin(), rows.end());
          report.cols.assign(cols.begin(), cols.end());
          return false;
        }
        return true;
      });
    });
  }
  return report;
}

GeneratorMatrix GeneratorMatrix::FromLambda(const Matrix& lambda) {
  const MdsReport report = ValidateMds(lambda);
  if (!report.pass) Fail(ErrorCode::kNotMds, report.Describe());
  return GeneratorMatrix(
      CodeParams::Create(lambda.cols(), lambda.rows(), lambda.field()), lambda);
}

Matrix GeneratorMatrix::parity() const {
  std::vector<std::size_t> cols(n() - k());
  std::iota(cols.begin(), cols.end(), k());
  return lambda_.SelectColumns(cols);
}

GeneratorMatrix GeneratorMatrix::Punctured(std::size_t n_prime) const {
  if (n_prime <= k() || n_prime > n()) {
    Fail(ErrorCode::kInvalidArgument,
         "punctured length must lie in (k, n], got " + std::to_string(n_prime));
  }
  std::vector<std::size_t> cols(n_prime);
  std::iota(cols.begin(), cols.end(), 0);
  return GeneratorMatrix(CodeParams::Create(n_prime, k(), field()),
                         lambda_.SelectColumns(cols));
}

GeneratorMatrix BuildCauchyGenerator(const CodeParams& params) {
  const PrimeField& f = params.field();
  const std::uint64_t q = f.modulus();
  const std::size_t k = params.k();
  const std::size_t c = params.redundancy();
  // x_i = i for i < k and y_j = k + j for j < n - k; distinct residues need
  // n <= q, nonvanishing sums need x_i + y_j != 0 mod q.
  if (params.n() > q) {
    Fail(ErrorCode::kFieldTooSmall, "Cauchy points collide mod " +
                                        std::to_string(q));
  }
  Matrix p(f, k, c);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const Elem sum = f.Reduce(i + k + j);
      if (sum == 0) {
        Fail(ErrorCode::kFieldTooSmall,
             "x_" + std::to_string(i + 1) + " + y_" + std::to_string(j + 1) +
                 " vanishes mod " + std::to_string(q));
      }
      p.set(i, j, f.Inverse(sum));
    }
  }
  // Cauchy blocks are MDS by construction; past the exhaustive range the
  // check is skipped rather than failing on its budget.
  if (params.n() > 16) return GeneratorMatrix(params, Systematic(p));
  return GeneratorMatrix::FromLambda(Systematic(p));
}

GeneratorMatrix BuildDefaultGenerator(const CodeParams& params) {
  try {
    return BuildCauchyGenerator(params);
  } catch (const PirError& e) {
    if (e.code() != ErrorCode::kFieldTooSmall) throw;
  }
  ParitySearch search(params.field(), params.k(), params.redundancy());
  if (!search.Run()) {
    Fail(ErrorCode::kFieldTooSmall,
         "no systematic MDS generator found for (" +
             std::to_string(params.n()) + "," + std::to_string(params.k()) +
             ") over GF(" + std::to_string(params.field().modulus()) + ")");
  }
  return GeneratorMatrix::FromLambda(Systematic(search.result()));
}

Matrix EncodeStripe(const GeneratorMatrix& g, const Matrix& stripe) {
  if (stripe.rows() != g.k()) {
    Fail(ErrorCode::kDimensionMismatch,
         "stripe has " + std::to_string(stripe.rows()) + " symbols, k = " +
             std::to_string(g.k()));
  }
  return Multiply(g.lambda().Transposed(), stripe);
}

Matrix ErasureDecodeStripe(const GeneratorMatrix& g,
                           const std::map<std::size_t, ExtSymbol>& available) {
  const std::size_t k = g.k();
  if (available.size() < k) {
    Fail(ErrorCode::kTooFewSymbols, std::to_string(available.size()) +
                                        " symbols available, need " +
                                        std::to_string(k));
  }
  std::vector<std::size_t> nodes;
  std::vector<ExtSymbol> values;
  for (const auto& [node, symbol] : available) {
    if (node < 1 || node > g.n()) {
      Fail(ErrorCode::kBadNodeIndex, "node " + std::to_string(node));
    }
    nodes.push_back(node - 1);
    values.push_back(symbol);
  }
  const PrimeField& f = g.field();
  const std::vector<std::size_t> head(nodes.begin(), nodes.begin() + k);
  const std::vector<ExtSymbol> head_values(values.begin(), values.begin() + k);
  // Column t of Lambda gives the coefficients of node t's symbol.
  const Matrix system = g.lambda().SelectColumns(head).Transposed();
  const Matrix stripe = Solve(system, Matrix::FromSymbols(f, head_values));

  if (available.size() > k) {
    const Matrix codeword = EncodeStripe(g, stripe);
    for (std::size_t t = k; t < nodes.size(); ++t) {
      if (codeword.symbol(nodes[t]) != values[t]) {
        Fail(ErrorCode::kInconsistentSymbols,
             "node " + std::to_string(nodes[t] + 1) +
                 " disagrees with the stripe decoded from the others");
      }
    }
  }
  return stripe;
}

}  // namespace mdspir
