#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "firmnet/network.hpp"
#include "firmnet/records.hpp"

namespace firmnet {

// Canonical unordered firm pair (a < b). Shareholding direction is discarded
// for pair identity; the existence matrix is about relationship presence.
struct PairKey {
  uint32_t a = 0;
  uint32_t b = 0;
  friend auto operator<=>(const PairKey&, const PairKey&) = default;
  uint64_t packed() const { return (static_cast<uint64_t>(a) << 32) | b; }
};

inline PairKey make_pair_key(uint32_t u, uint32_t v) {
  return u < v ? PairKey{u, v} : PairKey{v, u};
}

// Per-pair binary columns over the window: patent[t] = 1 iff an application
// was filed in year start+t, share[t] = 1 iff a relationship was in force at
// the end of year start+t.
struct EdgeExistenceMatrix {
  PairKey pair;
  std::vector<uint8_t> patent;
  std::vector<uint8_t> share;
};

// The measured pair population plus the node metadata needed to interpret it.
struct ExistenceSet {
  YearWindow window;
  std::vector<EdgeExistenceMatrix> items;  // sorted by pair key
  std::vector<std::string> keys;           // dense node id -> external key
  std::vector<std::string> countries;      // dense node id -> country ("" missing)

  size_t size() const { return items.size(); }
  const EdgeExistenceMatrix* find(PairKey key) const;
};

enum class PairScope { ObservedPairs, ExplicitList };

// Builds one matrix per pair in scope. ObservedPairs keeps pairs with at
// least one patent and at least one shareholding observation anywhere in the
// window; all-pairs scope is deliberately unsupported (the complement carries
// all-zero series only).
ExistenceSet build_existence_matrices(std::span<const TemporalEdgeRecord> patent_records,
                                      std::span<const TemporalEdgeRecord> share_records,
                                      YearWindow window, const FirmTable& table,
                                      PairScope scope = PairScope::ObservedPairs,
                                      std::span<const PairKey> explicit_list = {});

struct OverlapNetwork {
  int year = 0;
  Network network;  // simple undirected network over qualifying pairs
};

// Pairs whose P and S entries are both 1 at `year`. Endpoints of
// non-qualifying pairs are not included as nodes.
OverlapNetwork build_overlap_network(const ExistenceSet& set, int year);

enum class ScopeMode { IntraNational, International, Unknown };

// IntraNational keeps pairs with identical country codes, International
// differing codes; pairs with a missing/unknown country on either endpoint
// land in the Unknown bucket and in neither of the other two.
ExistenceSet split_scope(const ExistenceSet& set, ScopeMode mode);

// Country-specific variants: IntraNational = both endpoints in `country`,
// International = exactly one endpoint in `country`.
ExistenceSet split_scope_country(const ExistenceSet& set, std::string_view country, ScopeMode mode);

void write_existence_csv(const std::string& path, const ExistenceSet& set);

// Reads a dump back into records suitable for build_existence_matrices with
// ExplicitList scope (round-trip support).
struct ExistenceDump {
  std::vector<TemporalEdgeRecord> patent_records;
  std::vector<TemporalEdgeRecord> share_records;
  std::vector<PairKey> pairs;
};
ExistenceDump read_existence_csv(const std::string& path, FirmTable& table, YearWindow window);

}  // namespace firmnet
