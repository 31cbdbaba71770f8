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

#ifndef MDSPIR_PRIVACY_AUDIT_H_
#define MDSPIR_PRIVACY_AUDIT_H_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "mdspir/field.h"
#include "mdspir/matrix.h"
#include "mdspir/random.h"
#include "mdspir/scheme_a.h"
#include "mdspir/scheme_b.h"
#include "mdspir/simulator.h"

// Evidence that the queries a coalition sees do not depend on the wanted
// file. Certificates are exact linear-algebra checks on the map from the
// user's randomness to the coalition's queries; the uniformity report is the
// sampled counterpart.
namespace mdspir {

// Everything the auditor needs from a query construction: the queries as a
// function of the randomness. Swapping in a broken builder is how the
// negative controls work.
using QueryBuilderA = std::function<std::vector<Matrix>(
    const SchemeAParams& params, std::size_t m, std::size_t f,
    const Matrix& u)>;
using QueryBuilderB = std::function<std::vector<Matrix>(
    const SchemeBParams& params, std::size_t m, std::size_t f, std::size_t i,
    const Matrix& u)>;

std::vector<Matrix> HonestQueriesA(const SchemeAParams& params, std::size_t m,
                                   std::size_t f, const Matrix& u);
std::vector<Matrix> HonestQueriesB(const SchemeBParams& params, std::size_t m,
                                   std::size_t f, std::size_t i,
                                   const Matrix& u);

// Broken on purpose: the entry of U that lines up with the first symbol of
// file f is forced to zero, so that query entry is no longer masked.
std::vector<Matrix> LeakyQueriesA(const SchemeAParams& params, std::size_t m,
                                  std::size_t f, const Matrix& u);
// Broken on purpose: column f of U_i is forced to zero.
std::vector<Matrix> LeakyQueriesB(const SchemeBParams& params, std::size_t m,
                                  std::size_t f, std::size_t i,
                                  const Matrix& u);

struct SubsetResult {
  std::size_t m;                   // number of files this line was checked at
  std::vector<std::size_t> nodes;  // 1-based, ascending
  std::size_t rank;                // rank of U -> coalition queries
  std::size_t full_rank;
  // Scheme A: 1 if Q_i(U, f) - Q_i(U, f') never moved. Scheme B: rank of
  // the b x b mixing matrix built from Lambda.
  std::size_t aux;
  bool pass;
};

struct PrivacyCertificate {
  Scheme scheme = Scheme::kA;
  std::size_t b = 1;
  std::size_t m = 1;
  std::vector<SubsetResult> subsets;
  std::vector<std::string> notes;
  bool pass = false;

  // One header line, one line per subset, then notes.
  std::string Render() const;
};

// Per node: the map U -> Q_i must be U plus a constant for both f and f2, and
// the difference between the two must not depend on U. Checked through the
// builder's response to the zero matrix, every unit matrix, and 32 random U,
// at m and m + 1 files.
PrivacyCertificate CertifySchemeA(const SchemeAParams& params, std::size_t m,
                                  std::size_t f, std::size_t f2,
                                  RandomSource& rng,
                                  const QueryBuilderA& builder = HonestQueriesA);

// Every coalition of b contacted nodes must see a bijective image of U_i, for
// every file and subquery, at m and m + 1 files. Throws kSubsetBudgetExceeded
// if there are more than 10^6 coalitions.
PrivacyCertificate CertifySchemeB(const SchemeBParams& params, std::size_t m,
                                  RandomSource& rng,
                                  const QueryBuilderB& builder = HonestQueriesB);

// The b x b matrix whose rows are p_l (systematic l) or e_{l-k} (parity l)
// for l in the coalition, over the restricted parity block.
Matrix MixingMatrix(const SchemeBParams& params,
                    const std::vector<std::size_t>& coalition);

inline constexpr std::uint64_t kSubsetBudget = 1'000'000;

struct EnumerationReport {
  std::uint64_t randomness_values = 0;  // q^(b m)
  std::size_t coalitions = 0;
  std::size_t mismatches = 0;
  bool pass = false;
};

// Runs every U_i through the builder for file f and file f2 and compares, for
// each coalition of size b and each subquery, the two multisets of what the
// coalition receives. Throws kSubsetBudgetExceeded past 10^6 values of U_i.
EnumerationReport EnumerateCoalitionViews(
    const SchemeBParams& params, std::size_t m, std::size_t f, std::size_t f2,
    const QueryBuilderB& builder = HonestQueriesB);

// Produces one flattened coalition view per call.
using ViewSampler = std::function<std::vector<Elem>(RandomSource& rng)>;

// What node `node` receives in one scheme-A session.
ViewSampler CoalitionSamplerA(const SchemeAParams& params, std::size_t m,
                              std::size_t f, std::size_t node,
                              QueryBuilderA builder = HonestQueriesA);
// What the coalition receives over all k subqueries of one scheme-B session.
ViewSampler CoalitionSamplerB(const SchemeBParams& params, std::size_t m,
                              std::size_t f, std::vector<std::size_t> coalition,
                              QueryBuilderB builder = HonestQueriesB);

struct ChiSquareResult {
  std::vector<std::size_t> coordinates;  // one entry, or two for a pair test
  double statistic;
  double p_value;
  bool reject;
};

struct UniformityReport {
  std::size_t sample_count = 0;
  double significance = 0;
  double per_test_threshold = 0;  // significance / number of tests
  std::vector<ChiSquareResult> tests;
  bool pass = false;

  std::string Render() const;
};

inline constexpr double kDefaultSignificance = 0.001;

// Chi-square goodness of fit against uniform GF(q) for every coordinate of the
// view, plus up to 50 random coordinate pairs against uniform GF(q)^2 when
// there are at least 5 q^2 samples. Bonferroni-corrected. Significance 0
// rejects nothing. Throws kInsufficientSamples below 100 q samples.
UniformityReport SampleUniformity(const PrimeField& field,
                                  const ViewSampler& sampler,
                                  std::size_t samples, double significance,
                                  RandomSource& rng);

}  // namespace mdspir

#endif  // MDSPIR_PRIVACY_AUDIT_H_
