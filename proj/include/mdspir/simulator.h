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

#ifndef MDSPIR_SIMULATOR_H_
#define MDSPIR_SIMULATOR_H_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <vector>

#include "mdspir/combinatorics.h"
#include "mdspir/frame.h"
#include "mdspir/kernels.h"
#include "mdspir/matrix.h"
#include "mdspir/mds_code.h"
#include "mdspir/node_store.h"
#include "mdspir/random.h"
#include "mdspir/storage_layout.h"

namespace mdspir {

// What the user knows about the system: the layout header plus Lambda.
struct DssManifest {
  GeneratorMatrix code;
  std::size_t m;
  std::size_t alpha;
  std::size_t ell;
  std::vector<std::uint64_t> original_lengths;
};

// An honest-but-curious storage node. Its data never changes after
// construction and Answer may run concurrently.
class StorageNode {
 public:
  StorageNode(std::uint16_t node_id, Matrix w)
      : node_id_(node_id), w_(std::move(w)) {}

  std::uint16_t node_id() const { return node_id_; }
  const Matrix& data() const { return w_; }
  std::uint64_t answered_count() const { return answered_.load(); }

  // R = Q w. Throws kShapeMismatch when Q does not span m alpha columns.
  ResponseMessage Answer(const QueryMessage& msg) const;

 private:
  std::uint16_t node_id_;
  Matrix w_;
  mutable std::atomic<std::uint64_t> answered_{0};
};

class Cluster {
 public:
  static Cluster FromLayout(const DssLayout& layout);
  // Stores must describe one system and cover node ids 1..n exactly once.
  // Throws kHeaderPayloadMismatch otherwise.
  static Cluster FromStores(const std::vector<NodeStore>& stores);

  const DssManifest& manifest() const { return manifest_; }
  std::size_t n() const { return nodes_.size(); }
  // 1-based. Throws kBadNodeIndex.
  const StorageNode& node(std::size_t id) const;

 private:
  explicit Cluster(DssManifest manifest) : manifest_(std::move(manifest)) {}

  DssManifest manifest_;
  std::vector<std::unique_ptr<StorageNode>> nodes_;
};

// Delivers a query to its node and returns the answer. Implementations are
// safe to call from several threads at once.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual ResponseMessage Exchange(const QueryMessage& query) = 0;
};

// Direct dispatch.
class InMemoryTransport final : public Transport {
 public:
  explicit InMemoryTransport(const Cluster& cluster) : cluster_(cluster) {}
  ResponseMessage Exchange(const QueryMessage& query) override;

 private:
  const Cluster& cluster_;
};

// Pushes every message through the byte framing: the query is encoded into a
// client-to-node pipe, decoded on the node side, answered, and the response
// travels back as a frame on a second pipe.
class FramedTransport final : public Transport {
 public:
  explicit FramedTransport(const Cluster& cluster) : cluster_(cluster) {}
  ResponseMessage Exchange(const QueryMessage& query) override;

  std::uint64_t bytes_sent() const { return bytes_sent_.load(); }
  std::uint64_t bytes_received() const { return bytes_received_.load(); }

 private:
  const Cluster& cluster_;
  std::atomic<std::uint64_t> bytes_sent_{0};
  std::atomic<std::uint64_t> bytes_received_{0};
};

// Records every query addressed to its members and nothing else.
class SpyCoalition {
 public:
  explicit SpyCoalition(std::set<std::size_t> members)
      : members_(std::move(members)) {}

  const std::set<std::size_t>& members() const { return members_; }
  void Observe(const QueryMessage& query);
  // Queries seen by one member, in arrival order.
  std::vector<QueryMessage> transcript(std::size_t node_id) const;
  std::size_t size() const;

 private:
  std::set<std::size_t> members_;
  mutable std::mutex mu_;
  std::map<std::size_t, std::vector<QueryMessage>> seen_;
};

// Costs are counted in ExtSymbols (ell elements of width w each), so cPoP in
// symbols equals cPoP in bits.
struct CostLedger {
  std::uint64_t downloaded_symbols = 0;
  std::uint64_t uploaded_symbols = 0;  // query entries; not part of cPoP
  std::uint64_t file_symbols = 0;

  Ratio cpop() const { return Ratio::Of(downloaded_symbols, file_symbols); }
};

enum class Scheme { kA, kB };

struct SessionConfig {
  Scheme scheme = Scheme::kA;
  std::size_t b = 1;
  std::size_t f = 1;  // 1-based
  std::uint32_t session_id = 0;
  kernels::Mode fan_out = kernels::Mode::kParallel;
};

struct Exchange {
  std::size_t round;  // subquery index for scheme B, 1 for scheme A
  QueryMessage query;
  ResponseMessage response;
};

struct SessionResult {
  FileObject file;
  CostLedger ledger;
  std::vector<Exchange> transcript;
};

// Runs one private retrieval end to end. Scheme A needs alpha = n - k and
// b = 1; scheme B needs alpha = 1 and b <= n - k. Throws kSchemeMismatch plus
// whatever the scheme modules raise.
SessionResult RunRetrievalSession(const Cluster& cluster,
                                  const SessionConfig& config,
                                  RandomSource& rng, Transport& transport,
                                  SpyCoalition* coalition = nullptr);

// Decodes a finished session from its transcript and the manifest alone.
FileObject DecodeTranscript(const DssManifest& manifest,
                            const SessionConfig& config,
                            const std::vector<Exchange>& transcript);

// Non-private reference: read the k systematic nodes whole. cPoP = m.
SessionResult DownloadAllBaseline(const Cluster& cluster, std::size_t f);

// Picks scheme A for b = 1 and scheme B otherwise.
Scheme SchemeForCollusion(std::size_t b);

// cPoP each scheme is designed to achieve.
Ratio ExpectedCpop(Scheme scheme, std::size_t n, std::size_t k,
                   std::size_t b);

}  // namespace mdspir

#endif  // MDSPIR_SIMULATOR_H_
