#include "firmnet/records.hpp"

#include <algorithm>
#include <cctype>

#include "firmnet/csv.hpp"
#include "firmnet/errors.hpp"

namespace firmnet {

namespace {

bool record_less(const TemporalEdgeRecord& a, const TemporalEdgeRecord& b) {
  if (a.src != b.src) return a.src < b.src;
  if (a.dst != b.dst) return a.dst < b.dst;
  return a.year < b.year;
}

}  // namespace

std::vector<TemporalEdgeRecord> normalize_records(std::vector<TemporalEdgeRecord> records,
                                                  EdgeKind kind, LoadStats& stats,
                                                  const LoadOptions& opts) {
  std::vector<TemporalEdgeRecord> out;
  out.reserve(records.size());
  for (auto rec : records) {
    rec.kind = kind;
    if (rec.src == rec.dst) {
      ++stats.self_loops_dropped;
      continue;
    }
    if (!opts.window.contains(rec.year)) {
      ++stats.out_of_window_dropped;
      continue;
    }
    if (kind == EdgeKind::Patent && rec.src > rec.dst) std::swap(rec.src, rec.dst);
    out.push_back(rec);
  }
  std::sort(out.begin(), out.end(), record_less);
  auto last = std::unique(out.begin(), out.end());
  stats.duplicates_dropped += static_cast<uint64_t>(out.end() - last);
  out.erase(last, out.end());
  return out;
}

std::vector<TemporalEdgeRecord> load_edges(const std::string& path, EdgeKind kind,
                                           FirmTable& table, LoadStats& stats,
                                           const LoadOptions& opts) {
  std::vector<TemporalEdgeRecord> raw;
  csv::for_each_row(path, "src,dst,year", [&](size_t lineno, const auto& fields) {
    ++stats.rows;
    long year = 0;
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty() ||
        !csv::parse_int(fields[2], year)) {
      ++stats.malformed_rows;
      if (stats.malformed_rows > opts.max_malformed)
        throw ParseError(path, lineno, "malformed edge row");
      return;
    }
    TemporalEdgeRecord rec;
    rec.src = table.intern(fields[0]);
    rec.dst = table.intern(fields[1]);
    rec.year = static_cast<int32_t>(year);
    raw.push_back(rec);
  });
  return normalize_records(std::move(raw), kind, stats, opts);
}

void load_nodes(const std::string& path, FirmTable& table, LoadStats& stats) {
  csv::for_each_row(path, "id,country", [&](size_t lineno, const auto& fields) {
    ++stats.rows;
    if (fields.size() != 2 || fields[0].empty()) throw ParseError(path, lineno, "malformed node row");
    uint32_t id = table.intern(fields[0]);
    std::string_view c = fields[1];
    if (c.empty()) {
      table.set_country(id, "");
    } else if (c.size() == 2 && std::isalpha(static_cast<unsigned char>(c[0])) &&
               std::isalpha(static_cast<unsigned char>(c[1]))) {
      std::string code{static_cast<char>(std::toupper(c[0])), static_cast<char>(std::toupper(c[1]))};
      table.set_country(id, std::move(code));
    } else {
      ++stats.unknown_countries;
      table.set_country(id, "??");
    }
  });
}

void write_edges_csv(const std::string& path, std::span<const TemporalEdgeRecord> records,
                     const FirmTable& table) {
  csv::Writer w(path, "src,dst,year");
  for (const auto& rec : records) {
    w.stream() << table.key(rec.src) << ',' << table.key(rec.dst) << ',' << rec.year << '\n';
  }
}

void write_nodes_csv(const std::string& path, const FirmTable& table) {
  csv::Writer w(path, "id,country");
  for (uint32_t id = 0; id < table.size(); ++id) {
    w.stream() << table.key(id) << ',' << table.country(id) << '\n';
  }
}

}  // namespace firmnet
