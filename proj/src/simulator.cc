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

#include "mdspir/simulator.h"

#include <string>
#include <utility>

#include "mdspir/error.h"
#include "mdspir/scheme_a.h"
#include "mdspir/scheme_b.h"

namespace mdspir {

namespace {

void RequireScheme(bool ok, const std::string& why) {
  if (!ok) Fail(ErrorCode::kSchemeMismatch, why);
}

// Sends one query per entry, fanning out across threads if asked. Results are
// stored by position, so output order never depends on scheduling.
std::vector<ResponseMessage> Dispatch(const std::vector<QueryMessage>& queries,
                                      Transport& transport,
                                      SpyCoalition* coalition,
                                      kernels::Mode mode) {
  std::vector<std::unique_ptr<ResponseMessage>> slots(queries.size());
  auto body = [&](std::size_t idx) {
    if (coalition != nullptr) coalition->Observe(queries[idx]);
    slots[idx] =
        std::make_unique<ResponseMessage>(transport.Exchange(queries[idx]));
  };
  if (mode == kernels::Mode::kSerial) {
    kernels::SerialFor(queries.size(), body);
  } else {
    kernels::ParallelFor(queries.size(), body);
  }
  std::vector<ResponseMessage> out;
  out.reserve(queries.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace

ResponseMessage StorageNode::Answer(const QueryMessage& msg) const {
  if (msg.q.cols() != w_.rows()) {
    Fail(ErrorCode::kShapeMismatch,
         "query spans " + std::to_string(msg.q.cols()) + " symbols, node " +
             std::to_string(node_id_) + " stores " +
             std::to_string(w_.rows()));
  }
  answered_.fetch_add(1);
  return ResponseMessage{.session_id = msg.session_id,
                         .node_id = node_id_,
                         .r = Multiply(msg.q, w_)};
}

Cluster Cluster::FromLayout(const DssLayout& layout) {
  DssManifest manifest{.code = layout.code(),
                       .m = layout.m(),
                       .alpha = layout.alpha(),
                       .ell = layout.ell(),
                       .original_lengths = {}};
  for (const FileObject& f : layout.files()) {
    manifest.original_lengths.push_back(f.original_length());
  }
  Cluster cluster(std::move(manifest));
  for (std::size_t i = 1; i <= layout.n(); ++i) {
    cluster.nodes_.push_back(std::make_unique<StorageNode>(
        static_cast<std::uint16_t>(i), layout.node_vector(i)));
  }
  return cluster;
}

Cluster Cluster::FromStores(const std::vector<NodeStore>& stores) {
  if (stores.empty()) {
    Fail(ErrorCode::kHeaderPayloadMismatch, "no node stores");
  }
  const NodeStore& first = stores.front();
  const std::size_t n = first.n();
  if (stores.size() != n) {
    Fail(ErrorCode::kHeaderPayloadMismatch,
         std::to_string(stores.size()) + " stores for n = " +
             std::to_string(n));
  }
  std::vector<const NodeStore*> by_id(n, nullptr);
  for (const NodeStore& s : stores) {
    if (!(s.lambda == first.lambda) || s.m != first.m ||
        s.alpha != first.alpha || s.ell != first.ell ||
        s.original_lengths != first.original_lengths) {
      Fail(ErrorCode::kHeaderPayloadMismatch,
           "node " + std::to_string(s.node_id) +
               " disagrees with node " + std::to_string(first.node_id) +
               " about the system layout");
    }
    if (by_id[s.node_id - 1] != nullptr) {
      Fail(ErrorCode::kHeaderPayloadMismatch,
           "duplicate store for node " + std::to_string(s.node_id));
    }
    by_id[s.node_id - 1] = &s;
  }
  Cluster cluster(DssManifest{.code = GeneratorMatrix::FromLambda(first.lambda),
                              .m = first.m,
                              .alpha = first.alpha,
                              .ell = first.ell,
                              .original_lengths = first.original_lengths});
  for (std::size_t i = 0; i < n; ++i) {
    cluster.nodes_.push_back(std::make_unique<StorageNode>(
        static_cast<std::uint16_t>(i + 1), by_id[i]->data));
  }
  return cluster;
}

const StorageNode& Cluster::node(std::size_t id) const {
  if (id < 1 || id > nodes_.size()) {
    Fail(ErrorCode::kBadNodeIndex, "node " + std::to_string(id));
  }
  return *nodes_[id - 1];
}

ResponseMessage InMemoryTransport::Exchange(const QueryMessage& query) {
  return cluster_.node(query.node_id).Answer(query);
}

ResponseMessage FramedTransport::Exchange(const QueryMessage& query) {
  const PrimeField& field = cluster_.manifest().code.field();
  ByteChannel to_node;
  ByteChannel to_client;

  const auto out = EncodeFrame(query);
  bytes_sent_ += out.size();
  to_node.Write(out);

  // Node side.
  const Message incoming = DecodeFrame(to_node.ReadFrame(), field);
  const auto* q = std::get_if<QueryMessage>(&incoming);
  if (q == nullptr) Fail(ErrorCode::kBadMsgType, "node expected a query");
  to_client.Write(EncodeFrame(cluster_.node(q->node_id).Answer(*q)));

  // Client side.
  const auto frame = to_client.ReadFrame();
  bytes_received_ += frame.size();
  const Message reply = DecodeFrame(frame, field);
  const auto* r = std::get_if<ResponseMessage>(&reply);
  if (r == nullptr) Fail(ErrorCode::kBadMsgType, "client expected a response");
  return *r;
}

void SpyCoalition::Observe(const QueryMessage& query) {
  if (!members_.contains(query.node_id)) return;
  std::lock_guard<std::mutex> lock(mu_);
  seen_[query.node_id].push_back(query);
}

std::vector<QueryMessage> SpyCoalition::transcript(std::size_t node_id) const {
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = seen_.find(node_id);
  return it == seen_.end() ? std::vector<QueryMessage>{} : it->second;
}

std::size_t SpyCoalition::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::size_t total = 0;
  for (const auto& [node, qs] : seen_) total += qs.size();
  return total;
}

FileObject DecodeTranscript(const DssManifest& manifest,
                            const SessionConfig& config,
                            const std::vector<Exchange>& transcript) {
  const GeneratorMatrix& code = manifest.code;
  FileObject file(code.field(), code.k(), manifest.alpha, manifest.ell);
  if (config.scheme == Scheme::kA) {
    const SchemeAParams params = SchemeAParams::Derive(code.params());
    const DisplacementSet ds =
        BuildDisplacements(params, manifest.m, config.f);
    std::vector<const Matrix*> by_node(code.n(), nullptr);
    for (const Exchange& e : transcript) {
      const std::size_t id = e.response.node_id;
      if (id < 1 || id > code.n()) {
        Fail(ErrorCode::kBadNodeIndex, "response from node " +
                                           std::to_string(id));
      }
      by_node[id - 1] = &e.response.r;
    }
    std::vector<Matrix> responses;
    for (std::size_t l = 0; l < code.n(); ++l) {
      if (by_node[l] == nullptr) {
        Fail(ErrorCode::kMissingResponse,
             "no response from node " + std::to_string(l + 1));
      }
      responses.push_back(*by_node[l]);
    }
    file = AssembleFileA(params, code, ds, responses);
  } else {
    const SchemeBParams params = SchemeBParams::Create(code, config.b);
    std::vector<std::map<std::size_t, ExtSymbol>> rounds(params.k());
    for (const Exchange& e : transcript) {
      if (e.round < 1 || e.round > params.k() || e.response.r.rows() != 1) {
        Fail(ErrorCode::kShapeMismatch, "malformed scheme-B exchange");
      }
      rounds[e.round - 1][e.response.node_id] = e.response.r.symbol(0);
    }
    for (std::size_t i = 0; i < params.k(); ++i) {
      file.set_cell(i, 0, DecodeSymbolB(params, rounds[i]));
    }
  }
  if (config.f < 1 || config.f > manifest.original_lengths.size()) {
    Fail(ErrorCode::kBadFileIndex, "file " + std::to_string(config.f));
  }
  file.set_original_length(manifest.original_lengths[config.f - 1]);
  return file;
}

SessionResult RunRetrievalSession(const Cluster& cluster,
                                  const SessionConfig& config,
                                  RandomSource& rng, Transport& transport,
                                  SpyCoalition* coalition) {
  const DssManifest& manifest = cluster.manifest();
  const GeneratorMatrix& code = manifest.code;
  const std::size_t n = code.n();
  const std::size_t k = code.k();
  if (config.f < 1 || config.f > manifest.m) {
    Fail(ErrorCode::kBadFileIndex,
         "file " + std::to_string(config.f) + " outside [1, " +
             std::to_string(manifest.m) + "]");
  }

  std::vector<Exchange> transcript;
  CostLedger ledger;
  ledger.file_symbols = k * manifest.alpha;

  if (config.scheme == Scheme::kA) {
    RequireScheme(config.b == 1, "scheme A tolerates exactly one spy");
    RequireScheme(manifest.alpha == n - k,
                  "scheme A needs alpha = n - k = " + std::to_string(n - k) +
                      ", stores have alpha = " +
                      std::to_string(manifest.alpha));
    const SchemeAParams params = SchemeAParams::Derive(code.params());
    const DisplacementSet ds = BuildDisplacements(params, manifest.m, config.f);
    const QuerySetA qs = BuildQueriesA(params, ds, rng);

    std::vector<QueryMessage> queries;
    for (std::size_t l = 0; l < n; ++l) {
      queries.push_back(QueryMessage{.session_id = config.session_id,
                                     .node_id = static_cast<std::uint16_t>(l + 1),
                                     .q = qs.queries[l]});
    }
    auto responses = Dispatch(queries, transport, coalition, config.fan_out);
    for (std::size_t l = 0; l < n; ++l) {
      ledger.uploaded_symbols += queries[l].q.rows() * queries[l].q.cols();
      ledger.downloaded_symbols += responses[l].r.rows();
      transcript.push_back(Exchange{.round = 1,
                                    .query = std::move(queries[l]),
                                    .response = std::move(responses[l])});
    }
  } else {
    RequireScheme(manifest.alpha == 1,
                  "scheme B needs alpha = 1, stores have alpha = " +
                      std::to_string(manifest.alpha));
    const SchemeBParams params = SchemeBParams::Create(code, config.b);
    for (std::size_t i = 1; i <= params.k(); ++i) {
      const SubqueryB sub = BuildQueriesB(params, manifest.m, config.f, i, rng);
      std::vector<QueryMessage> queries;
      for (std::size_t l = 0; l < params.contacted(); ++l) {
        queries.push_back(
            QueryMessage{.session_id = config.session_id,
                         .node_id = static_cast<std::uint16_t>(l + 1),
                         .q = sub.vectors[l]});
      }
      auto responses = Dispatch(queries, transport, coalition, config.fan_out);
      for (std::size_t l = 0; l < queries.size(); ++l) {
        ledger.uploaded_symbols += queries[l].q.rows() * queries[l].q.cols();
        ledger.downloaded_symbols += responses[l].r.rows();
        transcript.push_back(Exchange{.round = i,
                                      .query = std::move(queries[l]),
                                      .response = std::move(responses[l])});
      }
    }
  }
  FileObject file = DecodeTranscript(manifest, config, transcript);
  return SessionResult{.file = std::move(file),
                       .ledger = ledger,
                       .transcript = std::move(transcript)};
}

SessionResult DownloadAllBaseline(const Cluster& cluster, std::size_t f) {
  const DssManifest& manifest = cluster.manifest();
  const std::size_t k = manifest.code.k();
  if (f < 1 || f > manifest.m) {
    Fail(ErrorCode::kBadFileIndex,
         "file " + std::to_string(f) + " outside [1, " +
             std::to_string(manifest.m) + "]");
  }
  FileObject file(manifest.code.field(), k, manifest.alpha, manifest.ell);
  CostLedger ledger;
  ledger.file_symbols = k * manifest.alpha;
  for (std::size_t j = 1; j <= k; ++j) {
    const Matrix& w = cluster.node(j).data();
    ledger.downloaded_symbols += w.rows();
    for (std::size_t s = 0; s < manifest.alpha; ++s) {
      file.set_cell(j - 1, s, w.symbol((f - 1) * manifest.alpha + s));
    }
  }
  file.set_original_length(manifest.original_lengths[f - 1]);
  return SessionResult{.file = std::move(file), .ledger = ledger,
                       .transcript = {}};
}

Scheme SchemeForCollusion(std::size_t b) {
  return b == 1 ? Scheme::kA : Scheme::kB;
}

Ratio ExpectedCpop(Scheme scheme, std::size_t n, std::size_t k,
                   std::size_t b) {
  return scheme == Scheme::kA ? Ratio::Of(n, n - k) : Ratio::Of(b + k, 1);
}

}  // namespace mdspir
