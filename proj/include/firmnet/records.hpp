#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "firmnet/firm_table.hpp"

namespace firmnet {

enum class EdgeKind { Patent, Share };

struct YearWindow {
  int start = 2008;
  int end = 2016;
  int length() const { return end - start + 1; }
  bool contains(int y) const { return y >= start && y <= end; }
};

// One dated link observation. Patent records are undirected and stored with
// src <= dst; share records run from investee (src) to shareholder (dst).
struct TemporalEdgeRecord {
  uint32_t src = 0;
  uint32_t dst = 0;
  int32_t year = 0;
  EdgeKind kind = EdgeKind::Patent;

  friend bool operator==(const TemporalEdgeRecord&, const TemporalEdgeRecord&) = default;
};

struct LoadStats {
  uint64_t rows = 0;
  uint64_t self_loops_dropped = 0;
  uint64_t duplicates_dropped = 0;
  uint64_t out_of_window_dropped = 0;
  uint64_t malformed_rows = 0;
  uint64_t unknown_countries = 0;
};

struct LoadOptions {
  YearWindow window{2008, 2016};
  // Malformed rows tolerated before aborting; the default aborts on the first.
  uint64_t max_malformed = 0;
};

// Reads an edges CSV (header `src,dst,year`), interning endpoints into
// `table`. Records are canonicalized (patents), self-loop-free and
// deduplicated per (src,dst,year,kind). Rows outside the window are dropped
// and counted.
std::vector<TemporalEdgeRecord> load_edges(const std::string& path, EdgeKind kind,
                                           FirmTable& table, LoadStats& stats,
                                           const LoadOptions& opts = {});

// In-memory variant of the same normalization, used by generators and tests.
std::vector<TemporalEdgeRecord> normalize_records(std::vector<TemporalEdgeRecord> records,
                                                  EdgeKind kind, LoadStats& stats,
                                                  const LoadOptions& opts = {});

// Reads a nodes CSV (header `id,country`). Unrecognised country codes are
// stored as "??" and counted; blank means missing.
void load_nodes(const std::string& path, FirmTable& table, LoadStats& stats);

void write_edges_csv(const std::string& path, std::span<const TemporalEdgeRecord> records,
                     const FirmTable& table);
void write_nodes_csv(const std::string& path, const FirmTable& table);

}  // namespace firmnet
