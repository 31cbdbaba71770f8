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

#include <cstddef>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "mdspir/mds_code.h"
#include "mdspir/random.h"
#include "mdspir/simulator.h"
#include "mdspir/storage_layout.h"
#include "oracle.h"
#include "oracle_bridge.h"

namespace mdspir {
namespace {

TEST(OracleSelf, Arithmetic) {
  EXPECT_EQ(oracle::Inv(3, 7), 5);
  EXPECT_EQ(oracle::Inv(256, 257), 256);
  EXPECT_EQ(oracle::Det({{1, 2}, {3, 4}}, 5), 3);  // -2 mod 5
  EXPECT_EQ(oracle::Det({{2, 4}, {1, 2}}, 7), 0);
  EXPECT_EQ(oracle::MatMul({{1, 2}}, {{3}, {4}}, 5), (oracle::Mat{{1}}));
}

TEST(OracleSelf, SolveSmallSystem) {
  // x0 + x1 = 3, x1 = 1 over GF(5), two-component right-hand sides.
  std::vector<oracle::Equation> eqs = {{{1, 1, 0}, {3, 0}}, {{0, 1, 0}, {1, 4}}};
  const auto sol = oracle::SolveDetermined(eqs, 3, 2, 5);
  ASSERT_TRUE(sol);
  EXPECT_EQ((*sol)[0], (oracle::Vec{2, 1}));
  EXPECT_EQ((*sol)[1], (oracle::Vec{1, 4}));
  EXPECT_FALSE((*sol)[2]);
  eqs.push_back({{1, 1, 0}, {4, 0}});
  EXPECT_FALSE(oracle::SolveDetermined(eqs, 3, 2, 5));
}

DssLayout RandomLayout(const GeneratorMatrix& code, std::size_t m,
                       std::size_t alpha, std::size_t ell, RandomSource& rng) {
  std::vector<FileObject> files;
  for (std::size_t f = 0; f < m; ++f) {
    FileObject file(code.field(), code.k(), alpha, ell);
    for (std::size_t s = 0; s < alpha; ++s)
      for (std::size_t r = 0; r < code.k(); ++r)
        file.set_cell(r, s, SampleMatrix(code.field(), 1, ell, rng).symbol(0));
    files.push_back(std::move(file));
  }
  return DssLayout::Build(code, files);
}

TEST(OracleAgreement, FiveTwoGf5) {
  const auto code = GeneratorMatrix::FromLambda(Matrix::FromRows(
      PrimeField::Create(5), {{1, 0, 1, 1, 1}, {0, 1, 1, 2, 3}}));
  SeededRandom rng(1);
  const DssLayout layout = RandomLayout(code, 3, 3, 2, rng);
  const Cluster cluster = Cluster::FromLayout(layout);
  InMemoryTransport transport(cluster);
  for (std::size_t f = 1; f <= 3; ++f) {
    const SessionResult res =
        RunRetrievalSession(cluster, {.scheme = Scheme::kA, .f = f}, rng, transport);
    EXPECT_TRUE(oracle::AgreesWith(code, 3, 3, f, res.transcript, res.file));
    EXPECT_TRUE(oracle::AgreesWith(code, 3, 3, f, res.transcript, layout.file(f)));
  }
}

// Random codes, shapes and schemes; the oracle recovers exactly what the
// scheme decoded.
TEST(OracleAgreement, RandomInstances) {
  std::mt19937_64 pick(2);
  SeededRandom rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + pick() % 6;
    const std::size_t k = 2 + pick() % (n - 2);
    const auto field = PrimeField::Create(trial % 2 ? 13 : 257);
    const auto code = BuildCauchyGenerator(CodeParams::Create(n, k, field));
    const bool scheme_a = trial % 3 != 0;
    const std::size_t alpha = scheme_a ? n - k : 1;
    const std::size_t b = scheme_a ? 1 : 1 + pick() % (n - k);
    const std::size_t m = 1 + pick() % 3;
    const std::size_t ell = 1 + pick() % 2;
    const std::size_t f = 1 + pick() % m;
    const DssLayout layout = RandomLayout(code, m, alpha, ell, rng);
    const Cluster cluster = Cluster::FromLayout(layout);
    InMemoryTransport transport(cluster);
    const SessionResult res = RunRetrievalSession(
        cluster, {.scheme = scheme_a ? Scheme::kA : Scheme::kB, .b = b, .f = f},
        rng, transport);
    EXPECT_EQ(res.file, layout.file(f));
    EXPECT_TRUE(oracle::AgreesWith(code, m, alpha, f, res.transcript, res.file))
        << "n=" << n << " k=" << k << " b=" << b << " m=" << m;
  }
}

TEST(OracleAgreement, WrongFileDisagrees) {
  const auto code = BuildCauchyGenerator(CodeParams::Create(5, 2, PrimeField::Create(257)));
  SeededRandom rng(4);
  const DssLayout layout = RandomLayout(code, 2, 3, 1, rng);
  const Cluster cluster = Cluster::FromLayout(layout);
  InMemoryTransport transport(cluster);
  const SessionResult res =
      RunRetrievalSession(cluster, {.scheme = Scheme::kA, .f = 1}, rng, transport);
  EXPECT_FALSE(oracle::AgreesWith(code, 2, 3, 1, res.transcript, layout.file(2)));
}

}  // namespace
}  // namespace mdspir
