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

#include "mdspir/privacy_audit.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include <boost/math/distributions/chi_squared.hpp>

#include "mdspir/combinatorics.h"
#include "mdspir/error.h"
#include "mdspir/kernels.h"

namespace mdspir {

namespace {

constexpr std::size_t kRandomProbes = 32;
constexpr std::size_t kMaxPairs = 50;

std::string JoinIds(const std::vector<std::size_t>& ids) {
  std::string out = "{";
  for (std::size_t t = 0; t < ids.size(); ++t) {
    if (t > 0) out += ",";
    out += std::to_string(ids[t]);
  }
  return out + "}";
}

Matrix Difference(const Matrix& a, const Matrix& b) { return Subtract(a, b); }

// Scheme A, one file index: every node's linear part and constant.
struct ProbeA {
  std::vector<Matrix> constant;  // Q_i(0)
  std::vector<Matrix> linear;    // columns: vec(Q_i(E_t) - Q_i(0))
};

ProbeA ProbeSchemeA(const SchemeAParams& params, std::size_t m, std::size_t f,
                    const QueryBuilderA& builder) {
  const PrimeField& field = params.code.field();
  const std::size_t rows = params.d;
  const std::size_t cols = m * params.alpha;
  const std::size_t dim = rows * cols;
  ProbeA probe;
  probe.constant = builder(params, m, f, Matrix(field, rows, cols));
  for (std::size_t l = 0; l < params.n(); ++l) {
    probe.linear.emplace_back(field, dim, dim);
  }
  for (std::size_t t = 0; t < dim; ++t) {
    Matrix e(field, rows, cols);
    e.set(t / cols, t % cols, 1);
    const auto q = builder(params, m, f, e);
    for (std::size_t l = 0; l < params.n(); ++l) {
      const Matrix delta = Difference(q[l], probe.constant[l]);
      for (std::size_t s = 0; s < dim; ++s) {
        probe.linear[l].set(s, t, delta.data()[s]);
      }
    }
  }
  return probe;
}

bool IsIdentity(const Matrix& a) {
  return a == Matrix::Identity(a.field(), a.rows());
}

void CertifyAAt(const SchemeAParams& params, std::size_t m, std::size_t f,
                std::size_t f2, RandomSource& rng,
                const QueryBuilderA& builder, PrivacyCertificate& cert) {
  const PrimeField& field = params.code.field();
  const std::size_t n = params.n();
  const std::size_t dim = params.d * m * params.alpha;
  const ProbeA pf = ProbeSchemeA(params, m, f, builder);
  const ProbeA pg = ProbeSchemeA(params, m, f2, builder);

  std::vector<bool> affine(n, true);
  std::vector<bool> offset_constant(n, true);
  for (std::size_t probe = 0; probe < kRandomProbes; ++probe) {
    const Matrix u = SampleMatrix(field, params.d, m * params.alpha, rng);
    const auto qf = builder(params, m, f, u);
    const auto qg = builder(params, m, f2, u);
    for (std::size_t l = 0; l < n; ++l) {
      if (!(Difference(qf[l], u) == pf.constant[l]) ||
          !(Difference(qg[l], u) == pg.constant[l])) {
        affine[l] = false;
      }
      if (!(Difference(qf[l], qg[l]) ==
            Difference(pf.constant[l], pg.constant[l]))) {
        offset_constant[l] = false;
      }
    }
  }
  for (std::size_t l = 0; l < n; ++l) {
    const bool id_f = IsIdentity(pf.linear[l]);
    const bool id_g = IsIdentity(pg.linear[l]);
    const std::size_t rank =
        std::min(id_f ? dim : Rank(pf.linear[l]), id_g ? dim : Rank(pg.linear[l]));
    // The linear parts must also agree, or the offset would move with U.
    const bool same = pf.linear[l] == pg.linear[l];
    SubsetResult res{.m = m,
                     .nodes = {l + 1},
                     .rank = rank,
                     .full_rank = dim,
                     .aux = (offset_constant[l] && same) ? 1u : 0u,
                     .pass = false};
    res.pass = id_f && id_g && affine[l] && res.aux == 1;
    cert.subsets.push_back(std::move(res));
  }
}

// Scheme B, one (f, i): the (k + b) m x b m matrix taking vec(U_i) to the
// stacked node queries, and the constant part.
struct ProbeB {
  Matrix linear;
  Matrix constant;  // (k + b) m x 1
};

Matrix StackQueries(const PrimeField& field, const std::vector<Matrix>& q,
                    std::size_t m) {
  Matrix out(field, q.size() * m, 1);
  for (std::size_t l = 0; l < q.size(); ++l) {
    if (q[l].rows() != 1 || q[l].cols() != m) {
      Fail(ErrorCode::kShapeMismatch, "builder returned a malformed query");
    }
    for (std::size_t c = 0; c < m; ++c) out.set(l * m + c, 0, q[l].at(0, c));
  }
  return out;
}

ProbeB ProbeSchemeB(const SchemeBParams& params, std::size_t m, std::size_t f,
                    std::size_t i, const QueryBuilderB& builder) {
  const PrimeField& field = params.field();
  const std::size_t b = params.b();
  const std::size_t rows = params.contacted() * m;
  ProbeB probe{.linear = Matrix(field, rows, b * m),
               .constant = StackQueries(
                   field, builder(params, m, f, i, Matrix(field, b, m)), m)};
  for (std::size_t t = 0; t < b * m; ++t) {
    Matrix e(field, b, m);
    e.set(t / m, t % m, 1);
    const Matrix delta = Difference(
        StackQueries(field, builder(params, m, f, i, e), m), probe.constant);
    for (std::size_t s = 0; s < rows; ++s) probe.linear.set(s, t, delta.at(s, 0));
  }
  return probe;
}

Matrix CoalitionRows(const Matrix& linear, const std::vector<std::size_t>& s,
                     std::size_t m) {
  std::vector<std::size_t> rows;
  for (std::size_t node : s) {
    for (std::size_t c = 0; c < m; ++c) rows.push_back((node - 1) * m + c);
  }
  return linear.SelectRows(rows);
}

void CertifyBAt(const SchemeBParams& params, std::size_t m, RandomSource& rng,
                const QueryBuilderB& builder, PrivacyCertificate& cert) {
  const PrimeField& field = params.field();
  const std::size_t b = params.b();
  const std::size_t k = params.k();

  // Honest builders give the same linear map for every (f, i); keep the
  // distinct ones only.
  std::vector<Matrix> maps;
  bool affine = true;
  for (std::size_t f = 1; f <= m; ++f) {
    for (std::size_t i = 1; i <= k; ++i) {
      ProbeB probe = ProbeSchemeB(params, m, f, i, builder);
      const Matrix u = SampleMatrix(field, b, m, rng);
      Matrix vec_u(field, b * m, 1);
      for (std::size_t t = 0; t < b * m; ++t) {
        vec_u.set(t, 0, u.at(t / m, t % m));
      }
      const Matrix expect = Add(probe.constant, Multiply(probe.linear, vec_u));
      if (!(StackQueries(field, builder(params, m, f, i, u), m) == expect)) {
        affine = false;
      }
      if (std::find(maps.begin(), maps.end(), probe.linear) == maps.end()) {
        maps.push_back(std::move(probe.linear));
      }
    }
  }
  if (!affine) {
    cert.notes.push_back("m=" + std::to_string(m) +
                         ": builder is not affine in U_i");
  }

  const auto subsets = Combinations(params.contacted(), b);
  std::vector<SubsetResult> results(subsets.size());
  kernels::ParallelFor(subsets.size(), [&](std::size_t idx) {
    std::vector<std::size_t> s = subsets[idx];
    for (auto& v : s) ++v;
    std::size_t rank = b * m;
    for (const Matrix& map : maps) {
      rank = std::min(rank, Rank(CoalitionRows(map, s, m)));
    }
    const std::size_t mixing = Rank(MixingMatrix(params, s));
    results[idx] = SubsetResult{.m = m,
                                .nodes = s,
                                .rank = rank,
                                .full_rank = b * m,
                                .aux = mixing,
                                .pass = affine && rank == b * m && mixing == b};
  });
  for (auto& r : results) cert.subsets.push_back(std::move(r));
}

bool AllPass(const PrivacyCertificate& cert) {
  return std::all_of(cert.subsets.begin(), cert.subsets.end(),
                     [](const SubsetResult& r) { return r.pass; });
}

void FlattenInto(const Matrix& q, std::vector<Elem>& out) {
  out.insert(out.end(), q.data().begin(), q.data().end());
}

}  // namespace

std::vector<Matrix> HonestQueriesA(const SchemeAParams& params, std::size_t m,
                                   std::size_t f, const Matrix& u) {
  return QueriesFromRandomness(BuildDisplacements(params, m, f), u).queries;
}

std::vector<Matrix> HonestQueriesB(const SchemeBParams& params, std::size_t m,
                                   std::size_t f, std::size_t i,
                                   const Matrix& u) {
  return QueriesBFromRandomness(params, m, f, i, u).vectors;
}

std::vector<Matrix> LeakyQueriesA(const SchemeAParams& params, std::size_t m,
                                  std::size_t f, const Matrix& u) {
  Matrix broken = u;
  broken.set(0, (f - 1) * params.alpha, 0);
  return HonestQueriesA(params, m, f, broken);
}

std::vector<Matrix> LeakyQueriesB(const SchemeBParams& params, std::size_t m,
                                  std::size_t f, std::size_t i,
                                  const Matrix& u) {
  Matrix broken = u;
  for (std::size_t j = 0; j < broken.rows(); ++j) broken.set(j, f - 1, 0);
  return HonestQueriesB(params, m, f, i, broken);
}

std::string PrivacyCertificate::Render() const {
  std::ostringstream os;
  os << "scheme=" << (scheme == Scheme::kA ? "A" : "B") << " b=" << b
     << " m=" << m << " lines=" << subsets.size()
     << " verdict=" << (pass ? "pass" : "fail") << "\n";
  for (const SubsetResult& r : subsets) {
    os << "m=" << r.m << " S=" << JoinIds(r.nodes) << " rank=" << r.rank
       << "/" << r.full_rank;
    if (scheme == Scheme::kA) {
      os << " offset=" << (r.aux == 1 ? "constant" : "varies");
    } else {
      os << " mixing=" << r.aux << "/" << b;
    }
    os << " " << (r.pass ? "pass" : "fail") << "\n";
  }
  for (const std::string& note : notes) os << "note: " << note << "\n";
  return os.str();
}

PrivacyCertificate CertifySchemeA(const SchemeAParams& params, std::size_t m,
                                  std::size_t f, std::size_t f2,
                                  RandomSource& rng,
                                  const QueryBuilderA& builder) {
  PrivacyCertificate cert;
  cert.scheme = Scheme::kA;
  cert.b = 1;
  cert.m = m;
  for (std::size_t mm : {m, m + 1}) {
    CertifyAAt(params, mm, f, f2, rng, builder, cert);
  }
  if (m == 1) cert.notes.push_back("m=1: a single file, privacy is vacuous");
  if (f == f2) cert.notes.push_back("f = f': offset is zero");
  cert.pass = AllPass(cert);
  return cert;
}

PrivacyCertificate CertifySchemeB(const SchemeBParams& params, std::size_t m,
                                  RandomSource& rng,
                                  const QueryBuilderB& builder) {
  const std::uint64_t count =
      BinomialCapped(params.contacted(), params.b(), kSubsetBudget + 1);
  if (count > kSubsetBudget) {
    Fail(ErrorCode::kSubsetBudgetExceeded,
         "C(" + std::to_string(params.contacted()) + ", " +
             std::to_string(params.b()) + ") coalitions exceed 10^6");
  }
  PrivacyCertificate cert;
  cert.scheme = Scheme::kB;
  cert.b = params.b();
  cert.m = m;
  for (std::size_t mm : {m, m + 1}) {
    CertifyBAt(params, mm, rng, builder, cert);
  }
  if (m == 1) cert.notes.push_back("m=1: a single file, privacy is vacuous");
  cert.pass = AllPass(cert);
  return cert;
}

Matrix MixingMatrix(const SchemeBParams& params,
                    const std::vector<std::size_t>& coalition) {
  const std::size_t b = params.b();
  const std::size_t k = params.k();
  if (coalition.size() != b) {
    Fail(ErrorCode::kInvalidArgument, "coalition size must equal b");
  }
  const Matrix& p = params.restricted_parity();
  Matrix out(params.field(), b, b);
  for (std::size_t r = 0; r < b; ++r) {
    const std::size_t l = coalition[r];
    if (l < 1 || l > params.contacted()) {
      Fail(ErrorCode::kBadNodeIndex, "node " + std::to_string(l));
    }
    if (l <= k) {
      for (std::size_t c = 0; c < b; ++c) out.set(r, c, p.at(l - 1, c));
    } else {
      out.set(r, l - k - 1, 1);
    }
  }
  return out;
}

EnumerationReport EnumerateCoalitionViews(const SchemeBParams& params,
                                          std::size_t m, std::size_t f,
                                          std::size_t f2,
                                          const QueryBuilderB& builder) {
  const PrimeField& field = params.field();
  const std::size_t b = params.b();
  const std::size_t cells = b * m;
  const std::uint64_t q = field.modulus();
  std::uint64_t total = 1;
  for (std::size_t t = 0; t < cells; ++t) {
    total *= q;
    if (total > kSubsetBudget) {
      Fail(ErrorCode::kSubsetBudgetExceeded,
           "q^(b m) randomness values exceed 10^6");
    }
  }
  const auto subsets = Combinations(params.contacted(), b);
  EnumerationReport report;
  report.randomness_values = total;
  report.coalitions = subsets.size();

  for (std::size_t i = 1; i <= params.k(); ++i) {
    // views[file][subset] = every coalition view, one per U.
    std::vector<std::vector<std::vector<std::vector<Elem>>>> views(
        2, std::vector<std::vector<std::vector<Elem>>>(subsets.size()));
    for (std::uint64_t code = 0; code < total; ++code) {
      Matrix u(field, b, m);
      std::uint64_t rest = code;
      for (std::size_t t = 0; t < cells; ++t) {
        u.set(t / m, t % m, static_cast<Elem>(rest % q));
        rest /= q;
      }
      const std::size_t files[2] = {f, f2};
      for (int which = 0; which < 2; ++which) {
        const auto qs = builder(params, m, files[which], i, u);
        for (std::size_t s = 0; s < subsets.size(); ++s) {
          std::vector<Elem> view;
          for (std::size_t node : subsets[s]) FlattenInto(qs[node], view);
          views[which][s].push_back(std::move(view));
        }
      }
    }
    for (std::size_t s = 0; s < subsets.size(); ++s) {
      std::sort(views[0][s].begin(), views[0][s].end());
      std::sort(views[1][s].begin(), views[1][s].end());
      if (views[0][s] != views[1][s]) ++report.mismatches;
    }
  }
  report.pass = report.mismatches == 0;
  return report;
}

ViewSampler CoalitionSamplerA(const SchemeAParams& params, std::size_t m,
                              std::size_t f, std::size_t node,
                              QueryBuilderA builder) {
  if (node < 1 || node > params.n()) {
    Fail(ErrorCode::kBadNodeIndex, "node " + std::to_string(node));
  }
  return [params, m, f, node, builder = std::move(builder)](RandomSource& rng) {
    const Matrix u = SampleMatrix(params.code.field(), params.d,
                                  m * params.alpha, rng);
    std::vector<Elem> view;
    FlattenInto(builder(params, m, f, u)[node - 1], view);
    return view;
  };
}

ViewSampler CoalitionSamplerB(const SchemeBParams& params, std::size_t m,
                              std::size_t f, std::vector<std::size_t> coalition,
                              QueryBuilderB builder) {
  for (std::size_t node : coalition) {
    if (node < 1 || node > params.contacted()) {
      Fail(ErrorCode::kBadNodeIndex, "node " + std::to_string(node));
    }
  }
  return [params, m, f, coalition = std::move(coalition),
          builder = std::move(builder)](RandomSource& rng) {
    std::vector<Elem> view;
    for (std::size_t i = 1; i <= params.k(); ++i) {
      const Matrix u = SampleMatrix(params.field(), params.b(), m, rng);
      const auto qs = builder(params, m, f, i, u);
      for (std::size_t node : coalition) FlattenInto(qs[node - 1], view);
    }
    return view;
  };
}

std::string UniformityReport::Render() const {
  std::ostringstream os;
  os << "samples=" << sample_count << " significance=" << significance
     << " tests=" << tests.size() << " verdict=" << (pass ? "pass" : "fail")
     << "\n";
  for (const ChiSquareResult& t : tests) {
    os << "coord=" << JoinIds(t.coordinates) << " chi2=" << t.statistic
       << " p=" << t.p_value << " " << (t.reject ? "reject" : "ok") << "\n";
  }
  return os.str();
}

UniformityReport SampleUniformity(const PrimeField& field,
                                  const ViewSampler& sampler,
                                  std::size_t samples, double significance,
                                  RandomSource& rng) {
  const std::size_t q = field.modulus();
  if (samples < 100 * q) {
    Fail(ErrorCode::kInsufficientSamples,
         std::to_string(samples) + " samples, need at least " +
             std::to_string(100 * q));
  }
  std::vector<std::vector<Elem>> draws;
  draws.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    draws.push_back(sampler(rng));
    if (draws.back().size() != draws.front().size()) {
      Fail(ErrorCode::kShapeMismatch, "sampler changed view size");
    }
  }
  const std::size_t width = draws.front().size();

  std::vector<std::vector<std::size_t>> picks;
  for (std::size_t c = 0; c < width; ++c) picks.push_back({c});
  if (width >= 2 && samples >= 5 * q * q) {
    std::set<std::pair<std::size_t, std::size_t>> chosen;
    const std::size_t possible = width * (width - 1) / 2;
    const std::size_t want = std::min(kMaxPairs, possible);
    while (chosen.size() < want) {
      std::uint64_t x = 0;
      std::uint64_t y = 0;
      rng.Fill({reinterpret_cast<std::uint8_t*>(&x), sizeof x});
      rng.Fill({reinterpret_cast<std::uint8_t*>(&y), sizeof y});
      std::size_t a = x % width;
      std::size_t c = y % width;
      if (a == c) continue;
      if (a > c) std::swap(a, c);
      if (chosen.insert({a, c}).second) picks.push_back({a, c});
    }
  }

  UniformityReport report;
  report.sample_count = samples;
  report.significance = significance;
  report.per_test_threshold = significance / static_cast<double>(picks.size());
  for (const auto& coords : picks) {
    const std::size_t cells = coords.size() == 1 ? q : q * q;
    std::vector<std::uint64_t> counts(cells, 0);
    for (const auto& d : draws) {
      std::size_t cell = d[coords[0]];
      if (coords.size() == 2) cell = cell * q + d[coords[1]];
      ++counts[cell];
    }
    const double expected =
        static_cast<double>(samples) / static_cast<double>(cells);
    double stat = 0;
    for (std::uint64_t c : counts) {
      const double diff = static_cast<double>(c) - expected;
      stat += diff * diff / expected;
    }
    double p = 1.0;
    if (cells > 1) {
      const boost::math::chi_squared dist(static_cast<double>(cells - 1));
      p = boost::math::cdf(boost::math::complement(dist, stat));
    }
    report.tests.push_back(ChiSquareResult{.coordinates = coords,
                                           .statistic = stat,
                                           .p_value = p,
                                           .reject = p < report.per_test_threshold});
  }
  report.pass = std::none_of(report.tests.begin(), report.tests.end(),
                             [](const ChiSquareResult& t) { return t.reject; });
  return report;
}

}  // namespace mdspir
