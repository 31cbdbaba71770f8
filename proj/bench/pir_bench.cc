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

// Serial reference kernels against their OpenMP twins. Prints one line per
// workload with the best-of-N wall time of each and whether outputs matched.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "mdspir/field.h"
#include "mdspir/kernels.h"
#include "mdspir/matrix.h"
#include "mdspir/mds_code.h"
#include "mdspir/random.h"
#include "mdspir/simulator.h"
#include "mdspir/storage_layout.h"

namespace {

using mdspir::kernels::Mode;

double BestMillis(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count());
  }
  return best;
}

void Report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s serial=%9.3f ms  parallel=%9.3f ms  speedup=%5.2fx  %s\n",
              name, serial, parallel, serial / parallel,
              same ? "match" : "MISMATCH");
}

void BenchMultiply(std::size_t dim) {
  const auto field = mdspir::PrimeField::Create(65521);
  mdspir::SeededRandom rng(1);
  const auto a = mdspir::SampleMatrix(field, dim, dim, rng);
  const auto b = mdspir::SampleMatrix(field, dim, dim, rng);
  mdspir::Matrix s(field, 1, 1);
  mdspir::Matrix p(field, 1, 1);
  const double ts = BestMillis(3, [&] { s = mdspir::kernels::MultiplySerial(a, b); });
  const double tp = BestMillis(3, [&] { p = mdspir::kernels::MultiplyParallel(a, b); });
  char name[64];
  std::snprintf(name, sizeof name, "multiply %zux%zu", dim, dim);
  Report(name, ts, tp, s == p);
}

std::vector<mdspir::FileObject> RandomFiles(const mdspir::GeneratorMatrix& code,
                                            std::size_t m, std::size_t alpha,
                                            std::size_t ell,
                                            mdspir::RandomSource& rng) {
  std::vector<mdspir::FileObject> files;
  for (std::size_t f = 0; f < m; ++f) {
    mdspir::FileObject file(code.field(), code.k(), alpha, ell);
    for (std::size_t st = 0; st < alpha; ++st) {
      for (std::size_t r = 0; r < code.k(); ++r) {
        file.set_cell(r, st,
                      mdspir::SampleMatrix(code.field(), 1, ell, rng).symbol(0));
      }
    }
    files.push_back(std::move(file));
  }
  return files;
}

void BenchLayoutAndSessions() {
  const auto field = mdspir::PrimeField::Create(257);
  const auto code = mdspir::BuildDefaultGenerator(
      mdspir::CodeParams::Create(12, 4, field));
  mdspir::SeededRandom rng(2);
  const auto files = RandomFiles(code, 8, 8, 512, rng);

  std::vector<mdspir::Matrix> ws;
  std::vector<mdspir::Matrix> wp;
  const double ts = BestMillis(3, [&] {
    ws = mdspir::DssLayout::Build(code, files, Mode::kSerial).node_vectors();
  });
  const double tp = BestMillis(3, [&] {
    wp = mdspir::DssLayout::Build(code, files, Mode::kParallel).node_vectors();
  });
  Report("layout encode (12,4) m=8", ts, tp, ws == wp);

  const auto layout = mdspir::DssLayout::Build(code, files);
  const auto cluster = mdspir::Cluster::FromLayout(layout);
  mdspir::InMemoryTransport transport(cluster);
  bool same = true;
  auto run = [&](Mode mode) {
    mdspir::SeededRandom session_rng(3);
    mdspir::SessionConfig config{.scheme = mdspir::Scheme::kA, .f = 5,
                                 .fan_out = mode};
    const auto result =
        mdspir::RunRetrievalSession(cluster, config, session_rng, transport);
    same = same && result.file.symbols() == layout.file(5).symbols();
  };
  const double ss = BestMillis(5, [&] { run(Mode::kSerial); });
  const double sp = BestMillis(5, [&] { run(Mode::kParallel); });
  Report("scheme A session (12,4)", ss, sp, same);
}

}  // namespace

int main() {
  std::printf("omp threads: %d\n", omp_get_max_threads());
  BenchMultiply(128);
  BenchMultiply(384);
  BenchLayoutAndSessions();
  return 0;
}
