#include "firmnet/network.hpp"

#include <algorithm>
#include <numeric>

#include "firmnet/errors.hpp"

namespace firmnet {

namespace {

// Counting-sort CSR construction: offsets by degree, then scatter.
void build_csr(uint32_t n, std::span<const std::pair<uint32_t, uint32_t>> arcs, bool reverse,
               std::vector<uint64_t>& off, std::vector<uint32_t>& adj) {
  off.assign(n + 1, 0);
  for (const auto& [s, d] : arcs) ++off[(reverse ? d : s) + 1];
  for (uint32_t v = 0; v < n; ++v) off[v + 1] += off[v];
  adj.resize(arcs.size());
  std::vector<uint64_t> cursor(off.begin(), off.end() - 1);
  for (const auto& [s, d] : arcs) {
    uint32_t from = reverse ? d : s;
    uint32_t to = reverse ? s : d;
    adj[cursor[from]++] = to;
  }
}

struct UnionFind {
  std::vector<uint32_t> parent;
  explicit UnionFind(uint32_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  uint32_t find(uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = a;
  }
};

}  // namespace

Network Network::from_arcs(uint32_t n, std::span<const std::pair<uint32_t, uint32_t>> arcs,
                           bool directed, Multiplicity mult, std::vector<std::string> keys,
                           std::vector<std::string> countries) {
  for (const auto& [s, d] : arcs) {
    if (s >= n || d >= n) throw DataError("network: arc endpoint out of range");
  }
  Network net;
  net.n_ = n;
  net.directed_ = directed;
  net.multiplicity_ = mult;
  net.edge_count_ = arcs.size();
  net.keys_ = std::move(keys);
  net.countries_ = std::move(countries);
  if (net.keys_.size() != n) net.keys_.resize(n);
  if (!net.countries_.empty() && net.countries_.size() != n) net.countries_.resize(n);

  if (directed) {
    build_csr(n, arcs, /*reverse=*/false, net.out_off_, net.out_adj_);
    build_csr(n, arcs, /*reverse=*/true, net.in_off_, net.in_adj_);
  } else {
    // Symmetrize: each edge appears in both endpoint lists.
    std::vector<std::pair<uint32_t, uint32_t>> both;
    both.reserve(arcs.size() * 2);
    for (const auto& [s, d] : arcs) {
      both.emplace_back(s, d);
      both.emplace_back(d, s);
    }
    build_csr(n, both, /*reverse=*/false, net.out_off_, net.out_adj_);
  }
  return net;
}

std::vector<std::pair<uint32_t, uint32_t>> Network::arcs() const {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  out.reserve(edge_count_);
  for (uint32_t v = 0; v < n_; ++v) {
    for (uint32_t w : out_neighbors(v)) {
      if (directed_ || v <= w) out.emplace_back(v, w);
    }
  }
  return out;
}

Network build_network(std::span<const TemporalEdgeRecord> records, const FirmTable& table,
                      const BuildOptions& opts) {
  bool directed = false;
  if (!records.empty()) {
    EdgeKind kind = records.front().kind;
    for (const auto& rec : records) {
      if (rec.kind != kind) throw DataError("build_network: records must all be of one kind");
    }
    directed = kind == EdgeKind::Share;
  }

  std::vector<std::pair<uint32_t, uint32_t>> arcs;
  arcs.reserve(records.size());
  for (const auto& rec : records) {
    if (opts.year_filter && !opts.year_filter->contains(rec.year)) continue;
    arcs.emplace_back(rec.src, rec.dst);
  }
  if (opts.multiplicity == Multiplicity::Simple) {
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  }
  return Network::from_arcs(table.size(), arcs, directed, opts.multiplicity,
                            table.keys_snapshot(), table.countries_snapshot());
}

TopologySummary summarize(const Network& net) {
  TopologySummary s;
  s.nodes = net.node_count();
  s.edges = net.edge_count();
  if (s.nodes == 0) return s;

  std::vector<uint64_t> degrees(net.node_count());
  for (uint32_t v = 0; v < net.node_count(); ++v) degrees[v] = net.degree(v);
  for (uint64_t d : degrees) ++s.degree_histogram[d];
  s.avg_degree = 2.0 * static_cast<double>(s.edges) / static_cast<double>(s.nodes);

  std::vector<uint64_t> sorted = degrees;
  std::sort(sorted.begin(), sorted.end());
  size_t n = sorted.size();
  s.median_degree = (n % 2 == 1)
                        ? static_cast<double>(sorted[n / 2])
                        : (static_cast<double>(sorted[n / 2 - 1]) + static_cast<double>(sorted[n / 2])) / 2.0;

  UnionFind uf(net.node_count());
  for (uint32_t v = 0; v < net.node_count(); ++v) {
    for (uint32_t w : net.out_neighbors(v)) uf.unite(v, w);
  }
  std::vector<uint64_t> comp_size(net.node_count(), 0);
  for (uint32_t v = 0; v < net.node_count(); ++v) ++comp_size[uf.find(v)];
  for (uint64_t c : comp_size) {
    if (c == 0) continue;
    ++s.component_count;
    s.largest_component_nodes = std::max(s.largest_component_nodes, c);
  }
  s.largest_component_fraction =
      static_cast<double>(s.largest_component_nodes) / static_cast<double>(s.nodes);
  return s;
}

Network country_partition(const Network& net, std::string_view country) {
  if (!net.has_countries()) throw DataError("country_partition: network has no country data");
  std::vector<uint32_t> remap(net.node_count(), UINT32_MAX);
  std::vector<std::string> keys;
  std::vector<std::string> countries;
  uint32_t next = 0;
  for (uint32_t v = 0; v < net.node_count(); ++v) {
    if (net.node_country(v) == country) {
      remap[v] = next++;
      keys.push_back(net.node_key(v));
      countries.emplace_back(country);
    }
  }
  std::vector<std::pair<uint32_t, uint32_t>> arcs;
  for (uint32_t v = 0; v < net.node_count(); ++v) {
    if (remap[v] == UINT32_MAX) continue;
    for (uint32_t w : net.out_neighbors(v)) {
      if (net.directed()) {
        if (remap[w] != UINT32_MAX) arcs.emplace_back(remap[v], remap[w]);
      } else if (v <= w && remap[w] != UINT32_MAX) {
        arcs.emplace_back(remap[v], remap[w]);
      }
    }
  }
  return Network::from_arcs(next, arcs, net.directed(), net.multiplicity(), std::move(keys),
                            std::move(countries));
}

Network expand_indirect(const Network& net, int max_depth, int depth_cap) {
  if (!net.directed()) throw DataError("expand_indirect: directed network required");
  if (max_depth < 1) throw DataError("expand_indirect: max_depth must be >= 1");
  if (max_depth > depth_cap)
    throw DataError("expand_indirect: max_depth " + std::to_string(max_depth) +
                    " exceeds densification cap " + std::to_string(depth_cap));

  std::vector<std::pair<uint32_t, uint32_t>> arcs;
  std::vector<uint32_t> dist(net.node_count(), UINT32_MAX);
  std::vector<uint32_t> frontier, next, touched;
  for (uint32_t src = 0; src < net.node_count(); ++src) {
    frontier.assign(1, src);
    dist[src] = 0;
    touched.assign(1, src);
    for (int d = 1; d <= max_depth && !frontier.empty(); ++d) {
      next.clear();
      for (uint32_t v : frontier) {
        for (uint32_t w : net.out_neighbors(v)) {
          if (dist[w] != UINT32_MAX) continue;
          dist[w] = static_cast<uint32_t>(d);
          touched.push_back(w);
          next.push_back(w);
          if (w != src) arcs.emplace_back(src, w);
        }
      }
      std::swap(frontier, next);
    }
    for (uint32_t v : touched) dist[v] = UINT32_MAX;
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  return Network::from_arcs(net.node_count(), arcs, true, Multiplicity::Simple,
                            {net.keys().begin(), net.keys().end()},
                            {net.countries().begin(), net.countries().end()});
}

}  // namespace firmnet
