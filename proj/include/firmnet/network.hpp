#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "firmnet/records.hpp"

namespace firmnet {

enum class Multiplicity { Simple, Multi };

// Compressed sparse adjacency over densely interned nodes. Immutable once
// built; safe for concurrent reads. Undirected networks store each edge in
// both endpoint lists; directed networks keep separate in/out lists so that
// both traversal directions are O(degree).
class Network {
 public:
  Network() = default;

  uint32_t node_count() const { return n_; }
  uint64_t edge_count() const { return edge_count_; }
  bool directed() const { return directed_; }
  Multiplicity multiplicity() const { return multiplicity_; }

  std::span<const uint32_t> out_neighbors(uint32_t v) const {
    return {out_adj_.data() + out_off_[v], out_adj_.data() + out_off_[v + 1]};
  }
  std::span<const uint32_t> in_neighbors(uint32_t v) const {
    if (!directed_) return out_neighbors(v);
    return {in_adj_.data() + in_off_[v], in_adj_.data() + in_off_[v + 1]};
  }
  uint64_t out_degree(uint32_t v) const { return out_off_[v + 1] - out_off_[v]; }
  uint64_t in_degree(uint32_t v) const {
    return directed_ ? in_off_[v + 1] - in_off_[v] : out_degree(v);
  }
  // Total degree: in+out for directed networks, incident edges otherwise.
  uint64_t degree(uint32_t v) const {
    return directed_ ? in_degree(v) + out_degree(v) : out_degree(v);
  }

  const std::string& node_key(uint32_t v) const { return keys_[v]; }
  bool has_countries() const { return !countries_.empty(); }
  const std::string& node_country(uint32_t v) const {
    static const std::string empty;
    return countries_.empty() ? empty : countries_[v];
  }
  std::span<const std::string> keys() const { return keys_; }
  std::span<const std::string> countries() const { return countries_; }

  // Arc list in deterministic (src, dst) order; undirected edges once each.
  std::vector<std::pair<uint32_t, uint32_t>> arcs() const;

  static Network from_arcs(uint32_t n, std::span<const std::pair<uint32_t, uint32_t>> arcs,
                           bool directed, Multiplicity mult, std::vector<std::string> keys,
                           std::vector<std::string> countries);

 private:
  uint32_t n_ = 0;
  bool directed_ = false;
  Multiplicity multiplicity_ = Multiplicity::Simple;
  uint64_t edge_count_ = 0;
  std::vector<uint64_t> out_off_{0};
  std::vector<uint32_t> out_adj_;
  std::vector<uint64_t> in_off_;
  std::vector<uint32_t> in_adj_;
  std::vector<std::string> keys_;
  std::vector<std::string> countries_;
};

struct BuildOptions {
  std::optional<YearWindow> year_filter;  // single year: start == end
  Multiplicity multiplicity = Multiplicity::Simple;
};

// Builds a network from records of a single kind. Patents yield an undirected
// network, shares a directed one. The node universe is the whole firm table,
// so firms without links appear as isolated nodes.
Network build_network(std::span<const TemporalEdgeRecord> records, const FirmTable& table,
                      const BuildOptions& opts = {});

struct TopologySummary {
  uint64_t nodes = 0;
  uint64_t edges = 0;
  double avg_degree = 0;     // 2E/N for both directed and undirected networks
  double median_degree = 0;  // median of the (total) degree multiset
  std::map<uint64_t, uint64_t> degree_histogram;
  uint64_t component_count = 0;  // weak components for directed networks
  uint64_t largest_component_nodes = 0;
  double largest_component_fraction = 0;
};

TopologySummary summarize(const Network& net);

// Induced subnetwork on nodes with the given country; ids re-interned
// densely, external keys retained. Unknown country yields an empty network.
Network country_partition(const Network& net, std::string_view country);

// Adds transitive edges along directed paths of length <= max_depth.
// max_depth = 1 is the identity; depths above `depth_cap` are rejected.
Network expand_indirect(const Network& net, int max_depth, int depth_cap = 4);

}  // namespace firmnet
