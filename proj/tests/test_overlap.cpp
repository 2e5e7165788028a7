#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "firmnet/errors.hpp"
#include "firmnet/existence.hpp"

using namespace firmnet;

namespace {

struct Fixture {
  FirmTable table;
  std::vector<TemporalEdgeRecord> patents, shares;
  YearWindow window{2008, 2016};

  uint32_t id(const char* key) { return table.intern(key); }
  void patent(const char* a, const char* b, int year) {
    uint32_t u = id(a), v = id(b);
    patents.push_back({std::min(u, v), std::max(u, v), static_cast<int32_t>(year), EdgeKind::Patent});
  }
  void share(const char* a, const char* b, int year) {
    shares.push_back({id(a), id(b), static_cast<int32_t>(year), EdgeKind::Share});
  }
  ExistenceSet build() { return build_existence_matrices(patents, shares, window, table); }
};

std::string column(const std::vector<uint8_t>& col) {
  std::string s;
  for (uint8_t v : col) s += char('0' + v);
  return s;
}

}  // namespace

TEST_CASE("existence matrix transcription") {
  Fixture f;
  f.patent("a", "b", 2010);
  for (int y = 2012; y <= 2016; ++y) f.share("a", "b", y);
  ExistenceSet set = f.build();
  REQUIRE(set.items.size() == 1);
  CHECK(column(set.items[0].patent) == "001000000");
  CHECK(column(set.items[0].share) == "000011111");
}

TEST_CASE("observed-pairs scope requires both link types") {
  Fixture f;
  for (int y = 2008; y <= 2016; ++y) f.patent("a", "b", y);  // patents only
  f.patent("c", "d", 2010);
  f.share("c", "d", 2014);
  f.share("e", "g", 2012);  // shares only
  ExistenceSet set = f.build();
  CHECK(set.items.size() == 1);
  CHECK(set.keys[set.items[0].pair.a] == "c");
}

TEST_CASE("three pairs two qualifying") {
  Fixture f;
  f.patent("a", "b", 2009);
  f.share("a", "b", 2010);
  f.patent("c", "d", 2010);
  f.share("d", "c", 2010);  // direction ignored for pair identity
  f.patent("e", "g", 2011);
  ExistenceSet set = f.build();
  CHECK(set.items.size() == 2);
}

TEST_CASE("explicit list scope includes all-zero matrices") {
  Fixture f;
  f.patent("a", "b", 2010);
  f.share("a", "b", 2011);
  uint32_t c = f.id("c"), d = f.id("d");
  std::vector<PairKey> pairs{make_pair_key(f.id("a"), f.id("b")), make_pair_key(c, d)};
  ExistenceSet set = build_existence_matrices(f.patents, f.shares, f.window, f.table,
                                              PairScope::ExplicitList, pairs);
  CHECK(set.items.size() == 2);
  CHECK(column(set.find(make_pair_key(c, d))->patent) == "000000000");
}

TEST_CASE("overlap network per year") {
  Fixture f;
  f.patent("a", "b", 2016);
  f.share("a", "b", 2016);
  f.patent("c", "d", 2016);
  f.share("c", "d", 2015);  // S=0 in 2016
  f.patent("c", "a", 2012);
  f.share("c", "a", 2012);
  ExistenceSet set = f.build();

  OverlapNetwork ov16 = build_overlap_network(set, 2016);
  CHECK(ov16.network.edge_count() == 1);
  CHECK(ov16.network.node_count() == 2);  // isolated endpoints of non-qualifying pairs excluded

  OverlapNetwork ov12 = build_overlap_network(set, 2012);
  CHECK(ov12.network.edge_count() == 1);

  OverlapNetwork ov09 = build_overlap_network(set, 2009);
  CHECK(ov09.network.edge_count() == 0);

  CHECK_THROWS_AS(build_overlap_network(set, 2017), DataError);
}

TEST_CASE("AND-sum equals overlap edge count in every year") {
  Fixture f;
  f.patent("a", "b", 2010);
  f.share("a", "b", 2010);
  f.patent("a", "b", 2014);
  f.share("b", "a", 2014);
  f.patent("c", "d", 2011);
  f.share("c", "d", 2011);
  f.share("c", "d", 2012);
  f.patent("a", "c", 2013);
  f.share("a", "c", 2013);
  ExistenceSet set = f.build();
  for (int year = f.window.start; year <= f.window.end; ++year) {
    uint64_t and_sum = 0;
    int t = year - f.window.start;
    for (const auto& m : set.items) and_sum += m.patent[t] & m.share[t];
    OverlapNetwork ov = build_overlap_network(set, year);
    CHECK(ov.network.edge_count() == and_sum);

    // membership, not just counts: the per-year networks carry the full AND
    // signal, keyed by external ids
    std::set<std::pair<std::string, std::string>> in_overlap;
    for (auto [a, b] : ov.network.arcs()) {
      std::string ka = ov.network.node_key(a), kb = ov.network.node_key(b);
      in_overlap.emplace(std::min(ka, kb), std::max(ka, kb));
    }
    for (const auto& m : set.items) {
      std::string ka = set.keys[m.pair.a], kb = set.keys[m.pair.b];
      auto key = std::make_pair(std::min(ka, kb), std::max(ka, kb));
      CHECK(in_overlap.count(key) == static_cast<size_t>(m.patent[t] & m.share[t]));
    }
  }
}

TEST_CASE("scope splitting by country") {
  Fixture f;
  f.patent("jp1", "jp2", 2010);
  f.share("jp1", "jp2", 2011);
  f.patent("jp1", "us1", 2010);
  f.share("us1", "jp1", 2011);
  f.patent("jp2", "xx1", 2012);
  f.share("jp2", "xx1", 2012);
  f.table.set_country(*f.table.find("jp1"), "JP");
  f.table.set_country(*f.table.find("jp2"), "JP");
  f.table.set_country(*f.table.find("us1"), "US");
  f.table.set_country(*f.table.find("xx1"), "??");
  ExistenceSet set = f.build();
  REQUIRE(set.items.size() == 3);

  ExistenceSet intra = split_scope(set, ScopeMode::IntraNational);
  ExistenceSet inter = split_scope(set, ScopeMode::International);
  ExistenceSet unknown = split_scope(set, ScopeMode::Unknown);
  CHECK(intra.size() == 1);
  CHECK(inter.size() == 1);
  CHECK(unknown.size() == 1);
  // partition: disjoint and exhaustive
  CHECK(intra.size() + inter.size() + unknown.size() == set.size());

  CHECK(split_scope_country(set, "JP", ScopeMode::IntraNational).size() == 1);
  CHECK(split_scope_country(set, "JP", ScopeMode::International).size() == 1);
  CHECK(split_scope_country(set, "US", ScopeMode::International).size() == 1);
  CHECK(split_scope_country(set, "US", ScopeMode::IntraNational).size() == 0);
}

TEST_CASE("existence dump round-trips through explicit list") {
  Fixture f;
  f.patent("a", "b", 2010);
  f.share("a", "b", 2012);
  f.share("a", "b", 2013);
  f.patent("c", "d", 2009);
  f.patent("c", "d", 2016);
  f.share("c", "d", 2009);
  ExistenceSet set = f.build();

  auto path = (std::filesystem::temp_directory_path() / "fn_existence_rt.csv").string();
  write_existence_csv(path, set);

  FirmTable table2;
  ExistenceDump dump = read_existence_csv(path, table2, f.window);
  ExistenceSet rt = build_existence_matrices(dump.patent_records, dump.share_records, f.window,
                                             table2, PairScope::ExplicitList, dump.pairs);
  REQUIRE(rt.items.size() == set.items.size());
  for (size_t i = 0; i < set.items.size(); ++i) {
    CHECK(column(rt.items[i].patent) == column(set.items[i].patent));
    CHECK(column(rt.items[i].share) == column(set.items[i].share));
  }
}

TEST_CASE("malformed existence dumps are rejected with line numbers") {
  auto dir = std::filesystem::temp_directory_path();
  auto path = (dir / "fn_existence_bad.csv").string();
  std::ofstream(path) << "src,dst,year,P,S\na,b,2010,1,0\na,b,2011,2,0\n";
  FirmTable table;
  try {
    read_existence_csv(path, table, YearWindow{2008, 2016});
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("empty scope yields empty set") {
  Fixture f;
  f.patent("a", "b", 2010);
  ExistenceSet set = f.build();
  CHECK(set.items.empty());
}
