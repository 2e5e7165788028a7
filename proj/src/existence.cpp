#include "firmnet/existence.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "firmnet/csv.hpp"
#include "firmnet/errors.hpp"

namespace firmnet {

namespace {

struct PairBits {
  uint32_t patent = 0;  // bit t = year window.start + t (window length <= 32)
  uint32_t share = 0;
};

}  // namespace

const EdgeExistenceMatrix* ExistenceSet::find(PairKey key) const {
  auto it = std::lower_bound(items.begin(), items.end(), key,
                             [](const EdgeExistenceMatrix& m, PairKey k) { return m.pair < k; });
  if (it == items.end() || !(it->pair == key)) return nullptr;
  return &*it;
}

ExistenceSet build_existence_matrices(std::span<const TemporalEdgeRecord> patent_records,
                                      std::span<const TemporalEdgeRecord> share_records,
                                      YearWindow window, const FirmTable& table, PairScope scope,
                                      std::span<const PairKey> explicit_list) {
  if (window.length() < 1 || window.length() > 32)
    throw DataError("existence window must span 1..32 years");

  std::unordered_map<uint64_t, PairBits> bits;
  bits.reserve(patent_records.size() + share_records.size());
  auto scan = [&](std::span<const TemporalEdgeRecord> records, bool is_patent) {
    for (const auto& rec : records) {
      if (!window.contains(rec.year)) continue;
      PairKey key = make_pair_key(rec.src, rec.dst);
      uint32_t bit = 1u << (rec.year - window.start);
      auto& pb = bits[key.packed()];
      if (is_patent)
        pb.patent |= bit;
      else
        pb.share |= bit;
    }
  };
  scan(patent_records, true);
  scan(share_records, false);

  ExistenceSet set;
  set.window = window;
  set.keys = table.keys_snapshot();
  set.countries = table.countries_snapshot();

  auto emit = [&](PairKey key, PairBits pb) {
    EdgeExistenceMatrix m;
    m.pair = key;
    m.patent.resize(window.length());
    m.share.resize(window.length());
    for (int t = 0; t < window.length(); ++t) {
      m.patent[t] = (pb.patent >> t) & 1u;
      m.share[t] = (pb.share >> t) & 1u;
    }
    set.items.push_back(std::move(m));
  };

  if (scope == PairScope::ObservedPairs) {
    for (const auto& [packed, pb] : bits) {
      if (pb.patent != 0 && pb.share != 0)
        emit(PairKey{static_cast<uint32_t>(packed >> 32), static_cast<uint32_t>(packed)}, pb);
    }
  } else {
    for (PairKey key : explicit_list) {
      auto it = bits.find(key.packed());
      emit(key, it == bits.end() ? PairBits{} : it->second);
    }
  }
  std::sort(set.items.begin(), set.items.end(),
            [](const EdgeExistenceMatrix& x, const EdgeExistenceMatrix& y) { return x.pair < y.pair; });
  set.items.erase(std::unique(set.items.begin(), set.items.end(),
                              [](const EdgeExistenceMatrix& x, const EdgeExistenceMatrix& y) {
                                return x.pair == y.pair;
                              }),
                  set.items.end());
  return set;
}

OverlapNetwork build_overlap_network(const ExistenceSet& set, int year) {
  if (!set.window.contains(year))
    throw DataError("overlap year " + std::to_string(year) + " outside window " +
                    std::to_string(set.window.start) + ".." + std::to_string(set.window.end));
  int t = year - set.window.start;

  std::vector<uint32_t> remap(set.keys.size(), UINT32_MAX);
  std::vector<std::string> keys, countries;
  std::vector<std::pair<uint32_t, uint32_t>> arcs;
  uint32_t next = 0;
  auto local = [&](uint32_t v) {
    if (remap[v] == UINT32_MAX) {
      remap[v] = next++;
      keys.push_back(set.keys[v]);
      if (!set.countries.empty()) countries.push_back(set.countries[v]);
    }
    return remap[v];
  };
  for (const auto& m : set.items) {
    if (m.patent[t] && m.share[t]) {
      uint32_t a = local(m.pair.a);
      uint32_t b = local(m.pair.b);
      arcs.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  OverlapNetwork result;
  result.year = year;
  result.network = Network::from_arcs(next, arcs, /*directed=*/false, Multiplicity::Simple,
                                      std::move(keys), std::move(countries));
  return result;
}

namespace {

ExistenceSet filter_set(const ExistenceSet& set, const std::function<bool(const EdgeExistenceMatrix&)>& keep) {
  ExistenceSet out;
  out.window = set.window;
  out.keys = set.keys;
  out.countries = set.countries;
  for (const auto& m : set.items) {
    if (keep(m)) out.items.push_back(m);
  }
  return out;
}

bool country_known(const std::string& c) { return !c.empty() && c != "??"; }

}  // namespace

ExistenceSet split_scope(const ExistenceSet& set, ScopeMode mode) {
  if (set.countries.empty()) throw DataError("split_scope: no country data available");
  return filter_set(set, [&](const EdgeExistenceMatrix& m) {
    const std::string& ca = set.countries[m.pair.a];
    const std::string& cb = set.countries[m.pair.b];
    if (!country_known(ca) || !country_known(cb)) return mode == ScopeMode::Unknown;
    switch (mode) {
      case ScopeMode::IntraNational: return ca == cb;
      case ScopeMode::International: return ca != cb;
      case ScopeMode::Unknown: return false;
    }
    return false;
  });
}

ExistenceSet split_scope_country(const ExistenceSet& set, std::string_view country, ScopeMode mode) {
  if (set.countries.empty()) throw DataError("split_scope: no country data available");
  if (mode == ScopeMode::Unknown) return split_scope(set, ScopeMode::Unknown);
  return filter_set(set, [&](const EdgeExistenceMatrix& m) {
    const std::string& ca = set.countries[m.pair.a];
    const std::string& cb = set.countries[m.pair.b];
    if (!country_known(ca) || !country_known(cb)) return false;
    bool a_in = ca == country;
    bool b_in = cb == country;
    if (mode == ScopeMode::IntraNational) return a_in && b_in;
    return a_in != b_in;  // exactly one endpoint
  });
}

void write_existence_csv(const std::string& path, const ExistenceSet& set) {
  csv::Writer w(path, "src,dst,year,P,S");
  for (const auto& m : set.items) {
    for (int t = 0; t < set.window.length(); ++t) {
      w.stream() << set.keys[m.pair.a] << ',' << set.keys[m.pair.b] << ',' << set.window.start + t
                 << ',' << int(m.patent[t]) << ',' << int(m.share[t]) << '\n';
    }
  }
}

ExistenceDump read_existence_csv(const std::string& path, FirmTable& table, YearWindow window) {
  ExistenceDump dump;
  std::vector<uint64_t> seen;
  csv::for_each_row(path, "src,dst,year,P,S", [&](size_t lineno, const auto& fields) {
    long year = 0, p = 0, s = 0;
    if (fields.size() != 5 || fields[0].empty() || fields[1].empty() ||
        !csv::parse_int(fields[2], year) || !csv::parse_int(fields[3], p) ||
        !csv::parse_int(fields[4], s) || p < 0 || p > 1 || s < 0 || s > 1)
      throw ParseError(path, lineno, "malformed existence row");
    uint32_t a = table.intern(fields[0]);
    uint32_t b = table.intern(fields[1]);
    PairKey key = make_pair_key(a, b);
    seen.push_back(key.packed());
    TemporalEdgeRecord rec{key.a, key.b, static_cast<int32_t>(year), EdgeKind::Patent};
    if (p) dump.patent_records.push_back(rec);
    if (s) {
      rec.kind = EdgeKind::Share;
      dump.share_records.push_back(rec);
    }
  });
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  for (uint64_t packed : seen)
    dump.pairs.push_back(PairKey{static_cast<uint32_t>(packed >> 32), static_cast<uint32_t>(packed)});
  LoadStats stats;
  LoadOptions opts;
  opts.window = window;
  dump.patent_records = normalize_records(std::move(dump.patent_records), EdgeKind::Patent, stats, opts);
  dump.share_records = normalize_records(std::move(dump.share_records), EdgeKind::Share, stats, opts);
  return dump;
}

}  // namespace firmnet
