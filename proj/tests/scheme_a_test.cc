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
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "mdspir/error.h"
#include "mdspir/mds_code.h"
#include "mdspir/random.h"
#include "mdspir/scheme_a.h"
#include "mdspir/storage_layout.h"
#include "oracle.h"

namespace mdspir {
namespace {

GeneratorMatrix FiveTwoGf5Code() {
  return GeneratorMatrix::FromLambda(Matrix::FromRows(
      PrimeField::Create(5), {{1, 0, 1, 1, 1}, {0, 1, 1, 2, 3}}));
}

// 1-based (row, column) positions of the ones in a 0/1 matrix.
std::set<std::pair<std::size_t, std::size_t>> Ones(const Matrix& v) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < v.rows(); ++r)
    for (std::size_t c = 0; c < v.cols(); ++c) {
      EXPECT_LE(v.at(r, c), 1u);
      if (v.at(r, c) == 1) out.insert({r + 1, c + 1});
    }
  return out;
}

TEST(SchemeAParams, DivisionAlgorithm) {
  const auto f = PrimeField::Create(31);
  const auto a = SchemeAParams::Derive(CodeParams::Create(15, 4, f));
  EXPECT_EQ(a.alpha, 11u);
  EXPECT_EQ(a.d, 4u);
  EXPECT_EQ(a.beta, 2u);
  EXPECT_EQ(a.r, 3u);
  const auto b = SchemeAParams::Derive(CodeParams::Create(5, 2, f));
  EXPECT_EQ(b.alpha, 3u);
  EXPECT_EQ(b.beta, 1u);
  EXPECT_EQ(b.r, 1u);
  const auto c = SchemeAParams::Derive(CodeParams::Create(4, 2, f));
  EXPECT_EQ(c.alpha, 2u);
  EXPECT_EQ(c.beta, 1u);
  EXPECT_EQ(c.r, 0u);
}

TEST(Displacements, FiveTwoGf5Offsets) {
  const auto code = FiveTwoGf5Code();
  const auto p = SchemeAParams::Derive(code.params());
  const DisplacementSet ds = BuildDisplacements(p, 3, 1);
  ASSERT_EQ(ds.v.size(), 5u);
  using Set = std::set<std::pair<std::size_t, std::size_t>>;
  EXPECT_EQ(Ones(ds.v[0]), (Set{{1, 1}}));
  EXPECT_EQ(Ones(ds.v[1]), (Set{{2, 1}}));
  EXPECT_EQ(Ones(ds.v[2]), (Set{{1, 2}, {2, 3}}));
  EXPECT_EQ(Ones(ds.v[3]), (Set{{1, 2}, {2, 3}}));
  EXPECT_TRUE(ds.v[4].IsZero());
  for (const Matrix& v : ds.v) {
    EXPECT_EQ(v.rows(), 2u);
    EXPECT_EQ(v.cols(), 9u);
  }
}

TEST(Displacements, ShiftedByFileIndex) {
  const auto code = FiveTwoGf5Code();
  const auto p = SchemeAParams::Derive(code.params());
  const DisplacementSet one = BuildDisplacements(p, 3, 1);
  const DisplacementSet two = BuildDisplacements(p, 3, 2);
  for (std::size_t i = 0; i < 5; ++i) {
    std::set<std::pair<std::size_t, std::size_t>> shifted;
    for (auto [r, c] : Ones(one.v[i])) shifted.insert({r, c + 3});
    EXPECT_EQ(Ones(two.v[i]), shifted);
  }
  EXPECT_THROW(BuildDisplacements(p, 3, 0), PirError);
  try {
    BuildDisplacements(p, 3, 4);
    FAIL();
  } catch (const PirError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadFileIndex);
  }
}

TEST(Queries, QEqualsUPlusV) {
  const auto code = FiveTwoGf5Code();
  const auto p = SchemeAParams::Derive(code.params());
  const DisplacementSet ds = BuildDisplacements(p, 3, 1);
  SeededRandom rng(1);
  const QuerySetA qs = BuildQueriesA(p, ds, rng);
  EXPECT_EQ(qs.u.rows(), 2u);
  EXPECT_EQ(qs.u.cols(), 9u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(qs.queries[i], Add(qs.u, ds.v[i]));
  }
  EXPECT_EQ(qs.queries[4], qs.u);  // the last r nodes see plain U
  SeededRandom again(1);
  EXPECT_EQ(BuildQueriesA(p, ds, again).queries, qs.queries);
}

TEST(DecodeSubquery, FiveTwoGf5FirstSubquery) {
  // I_1 = 1, I_2 = 2, x11 = 3, x12 = 4, x22 = 0 give sub-responses
  // (4, 2, 2, 4, 2); decoding must invert that.
  const auto code = FiveTwoGf5Code();
  const auto p = SchemeAParams::Derive(code.params());
  const DisplacementSet ds = BuildDisplacements(p, 3, 1);
  const Matrix sub = Matrix::FromRows(code.field(), {{4}, {2}, {2}, {4}, {2}});
  const auto cells = DecodeSubqueryA(p, code, ds, 1, sub);
  ASSERT_EQ(cells.size(), 3u);
  std::map<std::pair<std::size_t, std::size_t>, ExtSymbol> got;
  for (const auto& c : cells) got[{c.row, c.stripe}] = c.value;
  EXPECT_EQ(got.at({0, 0}), ExtSymbol{3});
  EXPECT_EQ(got.at({0, 1}), ExtSymbol{4});
  EXPECT_EQ(got.at({1, 1}), ExtSymbol{0});
}

TEST(DecodeSubquery, ZeroInZeroOut) {
  const auto code = FiveTwoGf5Code();
  const auto p = SchemeAParams::Derive(code.params());
  const DisplacementSet ds = BuildDisplacements(p, 2, 2);
  for (std::size_t i = 1; i <= 2; ++i) {
    for (const auto& c : DecodeSubqueryA(p, code, ds, i, Matrix(code.field(), 5, 3))) {
      EXPECT_EQ(c.value, (ExtSymbol{0, 0, 0}));
    }
  }
}

std::vector<std::vector<std::size_t>> FifteenFourPattern() {
  // labels[stripe][node], 15 nodes, 11 stripes.
  std::vector<std::vector<std::size_t>> t(11, std::vector<std::size_t>(15, 0));
  const std::size_t head[3][4] = {{1, 2, 3, 4}, {2, 3, 4, 1}, {3, 4, 1, 2}};
  for (std::size_t s = 0; s < 3; ++s)
    for (std::size_t n = 0; n < 4; ++n) t[s][n] = head[s][n];
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t n = 0; n < 4; ++n) {
      t[3 + j][4 + n] = j + 1;
      t[7 + j][8 + n] = j + 1;
    }
  return t;
}

TEST(RetrievalPattern, FifteenFourPattern) {
  const auto code =
      BuildCauchyGenerator(CodeParams::Create(15, 4, PrimeField::Create(29)));
  const auto p = SchemeAParams::Derive(code.params());
  const auto pattern = RetrievalPattern(p, BuildDisplacements(p, 1, 1));
  EXPECT_EQ(pattern, FifteenFourPattern());

  std::size_t labeled = 0;
  for (std::size_t j = 1; j <= 4; ++j) {
    std::size_t count = 0;
    std::set<std::size_t> busy;
    for (std::size_t s = 0; s < 11; ++s)
      for (std::size_t n = 0; n < 15; ++n)
        if (pattern[s][n] == j) {
          ++count;
          busy.insert(n);
        }
    EXPECT_EQ(count, 11u);
    EXPECT_EQ(15 - busy.size(), 4u);  // interference-only nodes
    labeled += count;
  }
  EXPECT_EQ(labeled, 44u);
}

TEST(DecodeSubquery, FifteenFourPatternFirstSubqueryCells) {
  const auto code =
      BuildCauchyGenerator(CodeParams::Create(15, 4, PrimeField::Create(29)));
  const auto p = SchemeAParams::Derive(code.params());
  const DisplacementSet ds = BuildDisplacements(p, 1, 1);
  const auto cells =
      DecodeSubqueryA(p, code, ds, 1, Matrix(code.field(), 15, 1));
  std::set<std::pair<std::size_t, std::size_t>> got;
  for (const auto& c : cells) got.insert({c.row + 1, c.stripe + 1});
  std::set<std::pair<std::size_t, std::size_t>> want{{1, 1}, {3, 3}, {4, 2}};
  for (std::size_t r = 1; r <= 4; ++r) {
    want.insert({r, 4});
    want.insert({r, 8});
  }
  EXPECT_EQ(got, want);
}

// Forward-evaluate responses with the oracle and decode, over a grid of
// parameters including r = 0, beta = 0 and k = 1.
TEST(SchemeAProperty, AssembleRecoversFile) {
  SeededRandom rng(99);
  const std::pair<std::size_t, std::size_t> shapes[] = {
      {2, 1}, {3, 2}, {4, 2}, {5, 2}, {5, 3}, {6, 2}, {7, 3}, {7, 5}, {9, 4}, {10, 7}};
  for (auto [n, k] : shapes) {
    const std::uint64_t q = DefaultModulus(n);
    const auto field = PrimeField::Create(q);
    const auto code = BuildCauchyGenerator(CodeParams::Create(n, k, field));
    const auto p = SchemeAParams::Derive(code.params());
    for (std::size_t m : {1u, 3u}) {
      std::vector<FileObject> files;
      for (std::size_t t = 0; t < m; ++t) {
        FileObject file(field, k, p.alpha, 2);
        for (std::size_t s = 0; s < p.alpha; ++s)
          for (std::size_t r = 0; r < k; ++r)
            file.set_cell(r, s, SampleMatrix(field, 1, 2, rng).symbol(0));
        files.push_back(file);
      }
      const DssLayout layout = DssLayout::Build(code, files);
      for (std::size_t f = 1; f <= m; ++f) {
        const DisplacementSet ds = BuildDisplacements(p, m, f);
        const QuerySetA qs = BuildQueriesA(p, ds, rng);
        std::vector<Matrix> responses;
        for (std::size_t i = 0; i < n; ++i) {
          oracle::Mat qm(qs.queries[i].rows(), oracle::Vec(qs.queries[i].cols()));
          for (std::size_t r = 0; r < qm.size(); ++r)
            for (std::size_t c = 0; c < qm[r].size(); ++c) qm[r][c] = qs.queries[i].at(r, c);
          const Matrix& w = layout.node_vector(i + 1);
          oracle::Mat wm(w.rows(), oracle::Vec(w.cols()));
          for (std::size_t r = 0; r < wm.size(); ++r)
            for (std::size_t c = 0; c < wm[r].size(); ++c) wm[r][c] = w.at(r, c);
          const oracle::Mat rm = oracle::MatMul(qm, wm, q);
          Matrix resp(field, rm.size(), 2);
          for (std::size_t r = 0; r < rm.size(); ++r)
            for (std::size_t c = 0; c < 2; ++c) resp.set(r, c, rm[r][c]);
          responses.push_back(resp);
        }
        const FileObject got = AssembleFileA(p, code, ds, responses);
        EXPECT_EQ(got.symbols(), files[f - 1].symbols()) << n << "," << k << " f=" << f;
      }
    }
  }
}

}  // namespace
}  // namespace mdspir
