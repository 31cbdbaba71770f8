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

#include "cli_app.h"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mdspir/error.h"
#include "mdspir/field.h"
#include "mdspir/mds_code.h"
#include "mdspir/node_store.h"
#include "mdspir/privacy_audit.h"
#include "mdspir/random.h"
#include "mdspir/scheme_a.h"
#include "mdspir/scheme_b.h"
#include "mdspir/simulator.h"
#include "mdspir/storage_layout.h"

namespace mdspir::cli {

namespace {

namespace fs = std::filesystem;

constexpr char kManifestName[] = "manifest.txt";

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoFailure("cannot read " + path.string());
  return bytes;
}

std::string ReadText(const fs::path& path) {
  const auto bytes = ReadFile(path);
  return std::string(bytes.begin(), bytes.end());
}

// Files land under a temporary name and are renamed only after every write
// has succeeded; anything left over is removed.
class StagedWrites {
 public:
  StagedWrites() = default;
  StagedWrites(const StagedWrites&) = delete;
  StagedWrites& operator=(const StagedWrites&) = delete;
  ~StagedWrites() {
    std::error_code ec;
    for (const auto& [tmp, target] : staged_) fs::remove(tmp, ec);
  }

  void Add(const fs::path& target, std::span<const std::uint8_t> bytes) {
    fs::path tmp = target;
    tmp += ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot create " + tmp.string());
    staged_.emplace_back(tmp, target);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw IoFailure("cannot write " + tmp.string());
  }

  void Add(const fs::path& target, const std::string& text) {
    Add(target, std::span<const std::uint8_t>(
                    reinterpret_cast<const std::uint8_t*>(text.data()),
                    text.size()));
  }

  void Commit() {
    for (const auto& [tmp, target] : staged_) {
      std::error_code ec;
      fs::rename(tmp, target, ec);
      if (ec) throw IoFailure("cannot rename onto " + target.string());
    }
    staged_.clear();
  }

 private:
  std::vector<std::pair<fs::path, fs::path>> staged_;
};

fs::path StorePath(const fs::path& dir, std::size_t node) {
  return dir / ("node_" + std::to_string(node) + ".pirn");
}

struct Manifest {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint32_t q = 0;
  std::size_t m = 0;
  std::size_t alpha = 0;
  std::size_t ell = 0;
  Scheme scheme = Scheme::kA;
  std::size_t b = 1;
  std::string format = "bytes";

  std::string Render() const {
    std::ostringstream os;
    os << "n=" << n << "\nk=" << k << "\nq=" << q << "\nm=" << m
       << "\nalpha=" << alpha << "\nell=" << ell
       << "\nscheme=" << (scheme == Scheme::kA ? "a" : "b") << "\nb=" << b
       << "\nformat=" << format << "\n";
    return os.str();
  }

  static Manifest Parse(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        Fail(ErrorCode::kInvalidArgument, "manifest line without '=': " + line);
      }
      kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    auto number = [&](const std::string& key) -> std::uint64_t {
      const auto it = kv.find(key);
      if (it == kv.end()) {
        Fail(ErrorCode::kInvalidArgument, "manifest lacks " + key);
      }
      try {
        std::size_t used = 0;
        const auto v = std::stoull(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(key);
        return v;
      } catch (const std::logic_error&) {
        Fail(ErrorCode::kInvalidArgument, "manifest " + key + " is not a number");
      }
    };
    Manifest mf;
    mf.n = number("n");
    mf.k = number("k");
    mf.q = static_cast<std::uint32_t>(number("q"));
    mf.m = number("m");
    mf.alpha = number("alpha");
    mf.ell = number("ell");
    mf.b = number("b");
    const std::string scheme = kv.count("scheme") ? kv["scheme"] : "";
    if (scheme != "a" && scheme != "b") {
      Fail(ErrorCode::kInvalidArgument, "manifest scheme must be a or b");
    }
    mf.scheme = scheme == "a" ? Scheme::kA : Scheme::kB;
    mf.format = kv.count("format") ? kv["format"] : "bytes";
    if (mf.format != "bytes" && mf.format != "symbols") {
      Fail(ErrorCode::kInvalidArgument, "manifest format must be bytes or symbols");
    }
    return mf;
  }
};

// Flags shared by encode, audit and bench.
struct CodeOptions {
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  std::size_t b = 1;
  std::optional<std::uint64_t> q;
  std::string scheme = "auto";
  std::string lambda;

  void Register(CLI::App* app) {
    app->add_option("--n", n, "number of storage nodes");
    app->add_option("--k", k, "code dimension");
    app->add_option("--b", b, "collusion bound")->check(CLI::PositiveNumber);
    app->add_option("--q", q, "field modulus (prime)");
    app->add_option("--scheme", scheme, "auto, a or b")
        ->check(CLI::IsMember({"auto", "a", "b"}));
    app->add_option("--lambda", lambda,
                    "explicit generator, rows split by ';', entries by ','");
  }

  Scheme ResolveScheme() const {
    if (scheme == "auto") return SchemeForCollusion(b);
    if (scheme == "a") {
      if (b != 1) Fail(ErrorCode::kSchemeMismatch, "scheme a needs b = 1");
      return Scheme::kA;
    }
    return Scheme::kB;
  }

  // min_modulus lifts the default field, e.g. to 257 for byte files.
  GeneratorMatrix Build(std::uint64_t min_modulus = 2) const {
    std::vector<std::vector<long long>> rows;
    if (!lambda.empty()) {
      std::stringstream all(lambda);
      std::string row_text;
      while (std::getline(all, row_text, ';')) {
        std::vector<long long> row;
        std::stringstream rs(row_text);
        std::string cell;
        while (std::getline(rs, cell, ',')) {
          try {
            std::size_t used = 0;
            row.push_back(std::stoll(cell, &used));
            if (used != cell.size()) throw std::invalid_argument(cell);
          } catch (const std::logic_error&) {
            Fail(ErrorCode::kInvalidArgument, "bad --lambda entry '" + cell + "'");
          }
        }
        rows.push_back(std::move(row));
      }
      if (rows.empty() || rows.front().empty()) {
        Fail(ErrorCode::kInvalidArgument, "empty --lambda");
      }
    }
    const std::size_t nn = rows.empty() ? n.value_or(0) : rows.front().size();
    const std::size_t kk = rows.empty() ? k.value_or(0) : rows.size();
    if ((n && *n != nn) || (k && *k != kk)) {
      Fail(ErrorCode::kInvalidArgument, "--lambda shape disagrees with --n/--k");
    }
    if (rows.empty() && (!n || !k)) {
      Fail(ErrorCode::kInvalidArgument, "--n and --k are required");
    }
    std::uint64_t modulus = 0;
    if (q) {
      modulus = *q;
    } else {
      modulus = NextPrimeAtLeast(
          std::max<std::uint64_t>(min_modulus, kk < nn ? DefaultModulus(nn) : 2));
    }
    const PrimeField field = PrimeField::Create(modulus);
    const CodeParams params = CodeParams::Create(nn, kk, field);
    if (rows.empty()) return BuildDefaultGenerator(params);
    for (const auto& row : rows) {
      if (row.size() != nn) {
        Fail(ErrorCode::kInvalidArgument, "--lambda rows differ in length");
      }
      for (long long v : row) {
        if (v < 0 || static_cast<std::uint64_t>(v) >= modulus) {
          Fail(ErrorCode::kInvalidArgument,
               "--lambda entry " + std::to_string(v) + " outside GF(" +
                   std::to_string(modulus) + ")");
        }
      }
    }
    std::vector<std::vector<Elem>> elems;
    for (const auto& row : rows) elems.emplace_back(row.begin(), row.end());
    return GeneratorMatrix::FromLambda(Matrix::FromRows(field, elems));
  }
};

// Files and nodes are numbered from 1.
const CLI::Validator kOneBased(
    [](std::string& value) -> std::string {
      if (value.find_first_not_of("0123456789") != std::string::npos ||
          value.find_first_not_of('0') == std::string::npos) {
        return "expected an index >= 1, got " + value;
      }
      return "";
    },
    "INDEX>=1");

std::unique_ptr<RandomSource> MakeRandom(std::optional<std::uint64_t> seed) {
  if (seed) return std::make_unique<SeededRandom>(*seed);
  return std::make_unique<SystemRandom>();
}

std::vector<Elem> ParseSymbols(const std::string& text,
                               const std::string& name) {
  std::vector<Elem> out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(token, &used);
      if (used != token.size() || v > 0xffffffffULL) {
        throw std::invalid_argument(token);
      }
      out.push_back(static_cast<Elem>(v));
    } catch (const std::logic_error&) {
      Fail(ErrorCode::kInvalidArgument,
           name + ": '" + token + "' is not a field element");
    }
  }
  return out;
}

std::string RenderSymbols(const std::vector<Elem>& values) {
  std::string out;
  for (std::size_t t = 0; t < values.size(); ++t) {
    out += std::to_string(values[t]);
    out += (t + 1 == values.size()) ? "\n" : " ";
  }
  return out;
}

// ---- encode ----

struct EncodeOptions {
  CodeOptions code;
  std::string out_dir;
  std::string input_format = "bytes";
  std::vector<std::string> inputs;
};

int RunEncode(const EncodeOptions& opt, std::ostream& out) {
  const Scheme scheme = opt.code.ResolveScheme();
  const bool bytes = opt.input_format == "bytes";
  const GeneratorMatrix code = opt.code.Build(bytes ? 257 : 2);
  if (scheme == Scheme::kB) SchemeBParams::Create(code, opt.code.b);
  const std::size_t alpha = scheme == Scheme::kA ? code.n() - code.k() : 1;

  std::vector<std::vector<std::uint8_t>> raw;
  for (const auto& path : opt.inputs) raw.push_back(ReadFile(path));

  std::vector<FileObject> files;
  if (bytes) {
    std::size_t ell = 1;
    for (const auto& r : raw) {
      ell = std::max(ell, ExtensionDegreeFor(r.size(), code.k(), alpha));
    }
    for (const auto& r : raw) {
      files.push_back(IngestBytes(r, code.params(), alpha, ell));
    }
  } else {
    std::vector<std::vector<Elem>> values;
    std::size_t ell = 1;
    for (std::size_t t = 0; t < raw.size(); ++t) {
      values.push_back(ParseSymbols(
          std::string(raw[t].begin(), raw[t].end()), opt.inputs[t]));
      ell = std::max(ell,
                     ExtensionDegreeFor(values.back().size(), code.k(), alpha));
    }
    for (const auto& v : values) {
      files.push_back(IngestSymbols(v, code.params(), alpha, ell));
    }
  }
  const DssLayout layout = DssLayout::Build(code, std::move(files));

  const fs::path dir(opt.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoFailure("cannot create " + dir.string());

  Manifest mf{.n = code.n(),
              .k = code.k(),
              .q = code.field().modulus(),
              .m = layout.m(),
              .alpha = alpha,
              .ell = layout.ell(),
              .scheme = scheme,
              .b = opt.code.b,
              .format = opt.input_format};
  StagedWrites writes;
  for (std::size_t i = 1; i <= code.n(); ++i) {
    writes.Add(StorePath(dir, i), ExportNodeStore(layout, i));
  }
  writes.Add(dir / kManifestName, mf.Render());
  writes.Commit();
  out << "stores=" << code.n() << " m=" << layout.m() << " alpha=" << alpha
      << " ell=" << layout.ell() << " q=" << mf.q << " dir=" << dir.string()
      << "\n";
  return kExitOk;
}

// ---- get ----

struct GetOptions {
  std::string store_dir;
  std::size_t f = 1;
  std::optional<std::uint64_t> seed;
  std::string output;
  bool baseline = false;
};

int RunGet(const GetOptions& opt, std::ostream& out) {
  const fs::path dir(opt.store_dir);
  const Manifest mf = Manifest::Parse(ReadText(dir / kManifestName));
  std::vector<NodeStore> stores;
  for (std::size_t i = 1; i <= mf.n; ++i) {
    stores.push_back(ParseNodeStore(ReadFile(StorePath(dir, i))));
  }
  const Cluster cluster = Cluster::FromStores(stores);
  const DssManifest& dm = cluster.manifest();
  if (dm.code.n() != mf.n || dm.code.k() != mf.k ||
      dm.code.field().modulus() != mf.q || dm.m != mf.m ||
      dm.alpha != mf.alpha || dm.ell != mf.ell) {
    Fail(ErrorCode::kHeaderPayloadMismatch,
         "manifest disagrees with the node stores");
  }
  if (opt.f > mf.m) {
    Fail(ErrorCode::kBadFileIndex, "file " + std::to_string(opt.f) +
                                       " outside [1, " + std::to_string(mf.m) +
                                       "]");
  }

  SessionResult result = [&] {
    if (opt.baseline) return DownloadAllBaseline(cluster, opt.f);
    auto rng = MakeRandom(opt.seed);
    FramedTransport transport(cluster);
    const SessionConfig config{.scheme = mf.scheme,
                               .b = mf.b,
                               .f = opt.f,
                               .session_id = 1};
    return RunRetrievalSession(cluster, config, *rng, transport);
  }();

  const fs::path target =
      opt.output.empty()
          ? dir / ("retrieved_" + std::to_string(opt.f) +
                   (mf.format == "bytes" ? ".bin" : ".txt"))
          : fs::path(opt.output);
  StagedWrites writes;
  if (mf.format == "bytes") {
    writes.Add(target, ExtractBytes(result.file));
  } else {
    writes.Add(target, RenderSymbols(ExtractSymbols(result.file)));
  }
  writes.Commit();
  out << "downloaded=" << result.ledger.downloaded_symbols
      << " file=" << result.ledger.file_symbols
      << " cpop=" << result.ledger.cpop() << "\n";
  return kExitOk;
}

// ---- audit ----

struct AuditOptions {
  CodeOptions code;
  std::size_t m = 2;
  std::size_t f = 1;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 0;
  bool mutant = false;
};

int RunAudit(const AuditOptions& opt, std::ostream& out) {
  const Scheme scheme = opt.code.ResolveScheme();
  const GeneratorMatrix code = opt.code.Build();
  if (opt.f > opt.m) {
    Fail(ErrorCode::kBadFileIndex, "--f exceeds --m");
  }
  auto rng = MakeRandom(opt.seed);
  const std::size_t q = code.field().modulus();
  const std::size_t samples =
      opt.samples != 0 ? opt.samples : std::max<std::size_t>(2000, 100 * q);

  PrivacyCertificate cert;
  ViewSampler sampler;
  if (scheme == Scheme::kA) {
    const SchemeAParams params = SchemeAParams::Derive(code.params());
    const QueryBuilderA builder = opt.mutant ? LeakyQueriesA : HonestQueriesA;
    const std::size_t f2 = opt.f % opt.m + 1;
    cert = CertifySchemeA(params, opt.m, opt.f, f2, *rng, builder);
    sampler = CoalitionSamplerA(params, opt.m, opt.f, 1, builder);
  } else {
    const SchemeBParams params = SchemeBParams::Create(code, opt.code.b);
    const QueryBuilderB builder = opt.mutant ? LeakyQueriesB : HonestQueriesB;
    cert = CertifySchemeB(params, opt.m, *rng, builder);
    std::vector<std::size_t> coalition;
    for (std::size_t l = 1; l <= params.b(); ++l) coalition.push_back(l);
    sampler = CoalitionSamplerB(params, opt.m, opt.f, coalition, builder);
  }
  const UniformityReport report = SampleUniformity(
      code.field(), sampler, samples, kDefaultSignificance, *rng);
  out << cert.Render() << report.Render();
  // The certificate decides; sampling is advisory.
  out << "audit=" << (cert.pass ? "pass" : "fail") << "\n";
  return cert.pass ? kExitOk : kExitValidation;
}

// ---- bench ----

struct BenchOptions {
  CodeOptions code;
  std::size_t m = 3;
  std::size_t ell = 4;
  std::size_t sessions = 10;
  std::uint64_t seed = 1;
};

int RunBench(const BenchOptions& opt, std::ostream& out) {
  const Scheme scheme = opt.code.ResolveScheme();
  const GeneratorMatrix code = opt.code.Build();
  const std::size_t n = code.n();
  const std::size_t k = code.k();
  const std::size_t alpha = scheme == Scheme::kA ? n - k : 1;
  SeededRandom rng(opt.seed);

  std::vector<FileObject> files;
  for (std::size_t f = 0; f < opt.m; ++f) {
    FileObject file(code.field(), k, alpha, opt.ell);
    for (std::size_t s = 0; s < alpha; ++s) {
      for (std::size_t r = 0; r < k; ++r) {
        file.set_cell(r, s, SampleMatrix(code.field(), 1, opt.ell, rng).symbol(0));
      }
    }
    files.push_back(std::move(file));
  }
  const DssLayout layout = DssLayout::Build(code, files);
  const Cluster cluster = Cluster::FromLayout(layout);
  InMemoryTransport transport(cluster);

  std::size_t correct = 0;
  CostLedger total;
  double millis[2] = {0, 0};
  const kernels::Mode modes[2] = {kernels::Mode::kSerial,
                                  kernels::Mode::kParallel};
  for (std::size_t s = 0; s < opt.sessions; ++s) {
    const std::size_t f = s % opt.m + 1;
    for (int which = 0; which < 2; ++which) {
      const SessionConfig config{.scheme = scheme,
                                 .b = opt.code.b,
                                 .f = f,
                                 .session_id = static_cast<std::uint32_t>(s),
                                 .fan_out = modes[which]};
      const auto start = std::chrono::steady_clock::now();
      const SessionResult result =
          RunRetrievalSession(cluster, config, rng, transport);
      millis[which] += std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
      if (which == 0) {
        if (result.file.symbols() == layout.file(f).symbols()) ++correct;
        total.downloaded_symbols += result.ledger.downloaded_symbols;
        total.file_symbols += result.ledger.file_symbols;
      }
    }
  }
  const SessionResult base = DownloadAllBaseline(cluster, 1);
  out << "scheme=" << (scheme == Scheme::kA ? "A" : "B") << " n=" << n
      << " k=" << k << " b=" << opt.code.b << " q=" << code.field().modulus()
      << " m=" << opt.m << " sessions=" << opt.sessions
      << " correct=" << correct << "/" << opt.sessions
      << " cpop=" << total.cpop()
      << " expected=" << ExpectedCpop(scheme, n, k, opt.code.b)
      << " baseline=" << base.ledger.cpop() << "\n";
  out << "fan_out_serial_ms=" << millis[0] << " fan_out_parallel_ms="
      << millis[1] << "\n";
  return correct == opt.sessions ? kExitOk : kExitValidation;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Private retrieval over MDS-coded storage"};
  app.name("mdspir");
  app.require_subcommand(1);

  EncodeOptions enc;
  CLI::App* encode = app.add_subcommand("encode", "encode files into node stores");
  enc.code.Register(encode);
  encode->add_option("--out-dir", enc.out_dir, "directory for the stores")
      ->required();
  encode->add_option("--input-format", enc.input_format, "bytes or symbols")
      ->check(CLI::IsMember({"bytes", "symbols"}));
  encode->add_option("files", enc.inputs, "input files")->required();

  GetOptions get;
  CLI::App* get_cmd = app.add_subcommand("get", "privately retrieve one file");
  get_cmd->add_option("--out-dir", get.store_dir, "directory holding the stores")
      ->required();
  get_cmd->add_option("--f", get.f, "file index, 1-based")
      ->required()
      ->check(kOneBased);
  get_cmd->add_option("--seed", get.seed, "deterministic randomness");
  get_cmd->add_option("--output", get.output, "where to write the file");
  get_cmd->add_flag("--baseline", get.baseline,
                    "download every systematic node instead");

  AuditOptions aud;
  CLI::App* audit = app.add_subcommand("audit", "certify query privacy");
  aud.code.Register(audit);
  audit->add_option("--m", aud.m, "number of files")->check(CLI::PositiveNumber);
  audit->add_option("--f", aud.f, "file index, 1-based")->check(kOneBased);
  audit->add_option("--seed", aud.seed, "deterministic randomness");
  audit->add_option("--samples", aud.samples, "uniformity sample count");
  audit->add_flag("--mutant", aud.mutant, "audit a deliberately leaky builder");

  BenchOptions ben;
  CLI::App* bench = app.add_subcommand("bench", "measure cPoP and timing");
  ben.code.Register(bench);
  bench->add_option("--m", ben.m, "number of files")->check(CLI::PositiveNumber);
  bench->add_option("--ell", ben.ell, "coordinates per symbol")
      ->check(CLI::PositiveNumber);
  bench->add_option("--sessions", ben.sessions, "retrievals to run")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", ben.seed, "deterministic randomness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*encode) return RunEncode(enc, out);
    if (*get_cmd) return RunGet(get, out);
    if (*audit) return RunAudit(aud, out);
    return RunBench(ben, out);
  } catch (const PirError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoFailure& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace mdspir::cli
