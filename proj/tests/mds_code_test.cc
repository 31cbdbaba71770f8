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

#include <map>
#include <vector>

#include <gtest/gtest.h>

#include "mdspir/combinatorics.h"
#include "mdspir/error.h"
#include "mdspir/mds_code.h"
#include "mdspir/random.h"
#include "oracle.h"

namespace mdspir {
namespace {

const PrimeField& F(std::uint64_t q) {
  static std::map<std::uint64_t, PrimeField> cache;
  return cache.try_emplace(q, PrimeField::Create(q)).first->second;
}

Matrix FourTwoGf3Lambda() {
  return Matrix::FromRows(F(3), {{1, 0, 1, 1}, {0, 1, 1, 2}});
}
Matrix FiveTwoGf5Lambda() {
  return Matrix::FromRows(F(5), {{1, 0, 1, 1, 1}, {0, 1, 1, 2, 3}});
}

// Oracle MDS test: every k x k column minor of Lambda nonzero.
bool OracleIsMds(const Matrix& lambda) {
  const std::int64_t q = lambda.field().modulus();
  bool ok = true;
  for (const auto& cols : Combinations(lambda.cols(), lambda.rows())) {
    oracle::Mat sub(lambda.rows(), oracle::Vec(lambda.rows()));
    for (std::size_t r = 0; r < lambda.rows(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c)
        sub[r][c] = lambda.at(r, cols[c]);
    if (oracle::Det(sub, q) == 0) ok = false;
  }
  return ok;
}

TEST(CodeParams, Validation) {
  EXPECT_NO_THROW(CodeParams::Create(4, 2, F(3)));
  try {
    CodeParams::Create(4, 5, F(11));
    FAIL();
  } catch (const PirError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    EXPECT_NE(std::string(e.what()).find("k must be < n"), std::string::npos);
  }
  EXPECT_THROW(CodeParams::Create(4, 4, F(11)), PirError);
  EXPECT_THROW(CodeParams::Create(4, 0, F(11)), PirError);
  EXPECT_EQ(CodeParams::Create(5, 2, F(5)).rate(), Ratio::Of(2, 5));
}

TEST(DefaultModulus, SmallestPrimeAtLeastTwoNMinusOne) {
  EXPECT_EQ(DefaultModulus(4), 7u);
  EXPECT_EQ(DefaultModulus(5), 11u);   // 9 -> 11
  EXPECT_EQ(DefaultModulus(10), 19u);
  EXPECT_EQ(DefaultModulus(15), 29u);
}

TEST(Cauchy, Examples) {
  const auto g = BuildCauchyGenerator(CodeParams::Create(4, 2, F(7)));
  EXPECT_EQ(g.parity(), Matrix::FromRows(F(7), {{4, 5}, {5, 2}}));
  EXPECT_EQ(g.lambda(),
            Matrix::FromRows(F(7), {{1, 0, 4, 5}, {0, 1, 5, 2}}));
  const auto h = BuildCauchyGenerator(CodeParams::Create(3, 2, F(5)));
  EXPECT_EQ(h.parity(), Matrix::FromRows(F(5), {{3}, {2}}));
  try {
    BuildCauchyGenerator(CodeParams::Create(4, 2, F(3)));
    FAIL();
  } catch (const PirError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFieldTooSmall);
  }
}

TEST(Cauchy, ParityEntriesAreReciprocals) {
  for (std::size_t n = 3; n <= 12; ++n) {
    for (std::size_t k = 1; k < n; ++k) {
      const std::uint64_t q = DefaultModulus(n);
      const auto g = BuildCauchyGenerator(CodeParams::Create(n, k, F(q)));
      const Matrix p = g.parity();
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n - k; ++j)
          EXPECT_EQ(p.at(i, j), oracle::Inv(i + k + j, q));
      EXPECT_TRUE(OracleIsMds(g.lambda())) << n << "," << k;
    }
  }
}

TEST(ValidateMds, KnownGoodCodes) {
  EXPECT_TRUE(ValidateMds(FourTwoGf3Lambda()).pass);
  EXPECT_TRUE(ValidateMds(FiveTwoGf5Lambda()).pass);
}

TEST(ValidateMds, RepeatedColumnFails) {
  const auto bad = Matrix::FromRows(F(3), {{1, 0, 1, 1}, {0, 1, 1, 1}});
  const MdsReport report = ValidateMds(bad);
  EXPECT_FALSE(report.pass);
  EXPECT_FALSE(report.Describe().empty());
  try {
    GeneratorMatrix::FromLambda(bad);
    FAIL();
  } catch (const PirError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotMds);
  }
}

TEST(ValidateMds, NotSystematic) {
  const auto m = Matrix::FromRows(F(5), {{1, 1, 1, 1}, {0, 1, 1, 2}});
  try {
    ValidateMds(m);
    FAIL();
  } catch (const PirError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotSystematic);
  }
}

// ValidateMds agrees with the minor-enumeration oracle on random systematic
// matrices over small fields, where non-MDS draws are common.
TEST(ValidateMdsProperty, AgreesWithOracle) {
  SeededRandom rng(31);
  int passes = 0;
  int fails = 0;
  for (int t = 0; t < 300; ++t) {
    const std::uint64_t q = (t % 2 == 0) ? 5 : 7;
    const std::size_t k = 2 + t % 2;
    const std::size_t n = k + 1 + t % 3;
    Matrix lambda(F(q), k, n);
    const Matrix p = SampleMatrix(F(q), k, n - k, rng);
    for (std::size_t i = 0; i < k; ++i) {
      lambda.set(i, i, 1);
      for (std::size_t j = 0; j < n - k; ++j) lambda.set(i, k + j, p.at(i, j));
    }
    const bool expect = OracleIsMds(lambda);
    EXPECT_EQ(ValidateMds(lambda).pass, expect);
    (expect ? passes : fails)++;
  }
  EXPECT_GT(passes, 10);
  EXPECT_GT(fails, 10);
}

TEST(DefaultGenerator, FallsBackBelowCauchyRange) {
  // GF(3) cannot host the Cauchy points for (4,2); the search lands on
  // The (4,2) code over GF(3).
  const auto g = BuildDefaultGenerator(CodeParams::Create(4, 2, F(3)));
  EXPECT_EQ(g.lambda(), FourTwoGf3Lambda());
  const auto h = BuildDefaultGenerator(CodeParams::Create(4, 2, F(7)));
  EXPECT_EQ(h.parity(), Matrix::FromRows(F(7), {{4, 5}, {5, 2}}));
}

TEST(DefaultGenerator, ImpossibleCodeIsFieldTooSmall) {
  // An MDS code of length n > q + 1 with 2 <= k <= n - 2 cannot exist.
  try {
    BuildDefaultGenerator(CodeParams::Create(6, 3, F(2)));
    FAIL();
  } catch (const PirError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFieldTooSmall);
  }
}

TEST(EncodeStripe, FourTwoGf3) {
  const auto g = GeneratorMatrix::FromLambda(FourTwoGf3Lambda());
  EXPECT_EQ(EncodeStripe(g, Matrix::FromRows(F(3), {{1}, {2}})),
            Matrix::FromRows(F(3), {{1}, {2}, {0}, {2}}));
  EXPECT_TRUE(EncodeStripe(g, Matrix(F(3), 2, 3)).IsZero());
  const Matrix c = EncodeStripe(g, Matrix::FromRows(F(3), {{1}, {0}}));
  EXPECT_EQ(c.at(0, 0), 1u);
  EXPECT_EQ(c.at(1, 0), 0u);
}

TEST(ErasureDecode, FourTwoGf3) {
  const auto g = GeneratorMatrix::FromLambda(FourTwoGf3Lambda());
  const Matrix want = Matrix::FromRows(F(3), {{1}, {2}});
  EXPECT_EQ(ErasureDecodeStripe(g, {{3, {0}}, {4, {2}}}), want);
  EXPECT_EQ(ErasureDecodeStripe(g, {{1, {1}}, {2, {2}}}), want);
  try {
    ErasureDecodeStripe(g, {{3, {0}}});
    FAIL();
  } catch (const PirError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooFewSymbols);
  }
  try {
    ErasureDecodeStripe(g, {{1, {1}}, {2, {2}}, {3, {1}}});
    FAIL();
  } catch (const PirError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInconsistentSymbols);
  }
  try {
    ErasureDecodeStripe(g, {{1, {1}}, {5, {2}}});
    FAIL();
  } catch (const PirError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadNodeIndex);
  }
}

// Any k of the n coded symbols give back the stripe.
TEST(ErasureDecodeProperty, AnyKSubsetRecovers) {
  SeededRandom rng(4);
  for (std::size_t n : {4u, 6u, 9u}) {
    for (std::size_t k = 1; k < n; ++k) {
      const auto& field = F(DefaultModulus(n));
      const auto g = BuildCauchyGenerator(CodeParams::Create(n, k, field));
      const Matrix stripe = SampleMatrix(field, k, 3, rng);
      const Matrix coded = EncodeStripe(g, stripe);
      for (const auto& subset : Combinations(n, k)) {
        std::map<std::size_t, ExtSymbol> avail;
        for (std::size_t node : subset) avail[node + 1] = coded.symbol(node);
        EXPECT_EQ(ErasureDecodeStripe(g, avail), stripe);
      }
    }
  }
}

TEST(Punctured, KeepsFirstColumns) {
  const auto g = GeneratorMatrix::FromLambda(FiveTwoGf5Lambda());
  const auto p = g.Punctured(4);
  EXPECT_EQ(p.n(), 4u);
  EXPECT_EQ(p.lambda(), Matrix::FromRows(F(5), {{1, 0, 1, 1}, {0, 1, 1, 2}}));
}

}  // namespace
}  // namespace mdspir
