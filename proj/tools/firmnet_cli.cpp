// firmnet: build and analyze interfirm co-patenting / shareholding networks,
// measure information dynamics between their link-formation histories, and
// simulate cascading failures on the shareholding side.
//
// Exit codes: 0 success, 2 usage/config error, 3 data/precondition error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "firmnet/aggregate.hpp"
#include "firmnet/cascade.hpp"
#include "firmnet/csv.hpp"
#include "firmnet/errors.hpp"
#include "firmnet/existence.hpp"
#include "firmnet/manifest.hpp"
#include "firmnet/network.hpp"
#include "firmnet/records.hpp"
#include "firmnet/significance.hpp"
#include "firmnet/synth.hpp"

namespace fs = std::filesystem;
using namespace firmnet;

namespace {

struct GlobalOpts {
  uint64_t seed = 0;
  int threads = 0;  // 0 = all cores
  std::string out = ".";
};

int effective_threads(int flag) {
  if (flag > 0) return flag;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// "A:B" or single year
YearWindow parse_window(const std::string& text) {
  auto pos = text.find(':');
  YearWindow w;
  long a = 0, b = 0;
  if (pos == std::string::npos) {
    if (!csv::parse_int(text, a)) throw CLI::ValidationError("--window", "expected YEAR or START:END");
    w.start = w.end = static_cast<int>(a);
  } else {
    if (!csv::parse_int(text.substr(0, pos), a) || !csv::parse_int(text.substr(pos + 1), b) || a > b)
      throw CLI::ValidationError("--window", "expected START:END with START <= END");
    w.start = static_cast<int>(a);
    w.end = static_cast<int>(b);
  }
  return w;
}

// "0..6" or "0,2,4" or single value
std::vector<int> parse_int_list(const std::string& text, const char* flag) {
  std::vector<int> out;
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    long a = 0, b = 0;
    if (!csv::parse_int(text.substr(0, dots), a) || !csv::parse_int(text.substr(dots + 2), b) || a > b)
      throw CLI::ValidationError(flag, "expected LO..HI");
    for (long v = a; v <= b; ++v) out.push_back(static_cast<int>(v));
    return out;
  }
  for (auto field : csv::split(text)) {
    long v = 0;
    if (!csv::parse_int(field, v)) throw CLI::ValidationError(flag, "expected integer list");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

// "0.2:1.0:0.2" grid, or comma list, or single value
std::vector<double> parse_double_grid(const std::string& text, const char* flag) {
  std::vector<double> out;
  if (std::count(text.begin(), text.end(), ':') == 2) {
    auto p1 = text.find(':');
    auto p2 = text.find(':', p1 + 1);
    double lo = 0, hi = 0, step = 0;
    if (!csv::parse_double(text.substr(0, p1), lo) ||
        !csv::parse_double(text.substr(p1 + 1, p2 - p1 - 1), hi) ||
        !csv::parse_double(text.substr(p2 + 1), step) || step <= 0)
      throw CLI::ValidationError(flag, "expected LO:HI:STEP");
    long count = std::lround((hi - lo) / step);
    for (long i = 0; i <= count; ++i) {
      // snap accumulated grid points back to their decimal representation
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.12g", lo + static_cast<double>(i) * step);
      double v = std::strtod(buf, nullptr);
      if (v <= hi + 1e-9) out.push_back(v);
    }
    return out;
  }
  for (auto field : csv::split(text)) {
    double v = 0;
    if (!csv::parse_double(field, v)) throw CLI::ValidationError(flag, "expected number list");
    out.push_back(v);
  }
  return out;
}

struct ManifestScope {
  RunManifest m;
  fs::path dir;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  ManifestScope(const std::string& command, const GlobalOpts& g, int argc, char** argv) {
    m.command = command;
    m.seed = g.seed;
    m.threads = effective_threads(g.threads);
    for (int i = 0; i < argc; ++i) m.argv.emplace_back(argv[i]);
    dir = g.out;
    fs::create_directories(dir);
  }
  void input(const std::string& path) { m.input_digests[path] = fnv1a64_hex(fnv1a64_file(path)); }
  std::string output(const std::string& name) {
    m.outputs.push_back(name);
    return (dir / name).string();
  }
  void finish() {
    m.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.write((dir / "manifest.json").string());
  }
};

void config_kv(RunManifest& m, const std::string& key, const std::string& value) {
  m.config[key] = value;
}

// ---------------------------------------------------------------------------
// gen

struct GenCoupledArgs {
  synth::CoupledGenParams p;
};

int run_gen_coupled(const GenCoupledArgs& args, const GlobalOpts& g, int argc, char** argv) {
  ManifestScope ms("gen coupled", g, argc, argv);
  synth::CoupledGenParams p = args.p;
  p.seed = g.seed;
  synth::CoupledData data = synth::gen_coupled(p);

  write_edges_csv(ms.output("patents.csv"), data.patent_records, *data.table);
  write_edges_csv(ms.output("shares.csv"), data.share_records, *data.table);
  write_nodes_csv(ms.output("nodes.csv"), *data.table);

  nlohmann::json truth;
  truth["d_delay"] = data.truth.d_delay;
  truth["converted_pairs"] = data.truth.converted_pairs;
  truth["params"] = {{"n_pairs", p.n_pairs},       {"window_start", p.years.start},
                     {"window_end", p.years.end},  {"p_patent", p.p_patent},
                     {"q_convert", p.q_convert},   {"d_delay", p.d_delay},
                     {"p_noise_share", p.p_noise_share}, {"n_countries", p.n_countries},
                     {"seed", p.seed}};
  std::ofstream(ms.output("truth.json")) << truth.dump(2) << '\n';

  config_kv(ms.m, "pairs", std::to_string(p.n_pairs));
  config_kv(ms.m, "window", std::to_string(p.years.start) + ":" + std::to_string(p.years.end));
  config_kv(ms.m, "p_patent", csv::format_double(p.p_patent));
  config_kv(ms.m, "q_convert", csv::format_double(p.q_convert));
  config_kv(ms.m, "delay", std::to_string(p.d_delay));
  config_kv(ms.m, "noise", csv::format_double(p.p_noise_share));
  config_kv(ms.m, "countries", std::to_string(p.n_countries));
  ms.finish();
  std::cerr << "gen coupled: " << data.patent_records.size() << " patent records, "
            << data.share_records.size() << " share records, "
            << data.truth.converted_pairs.size() << " converted pairs\n";
  return 0;
}

struct GenShareArgs {
  synth::ShareGenParams p;
};

int run_gen_shareholding(const GenShareArgs& args, const GlobalOpts& g, int argc, char** argv) {
  ManifestScope ms("gen shareholding", g, argc, argv);
  synth::ShareGenParams p = args.p;
  p.seed = g.seed;
  Network net = synth::gen_shareholding(p);

  {
    csv::Writer w(ms.output("edges.csv"), "src,dst,year");
    for (const auto& [s, d] : net.arcs())
      w.stream() << net.node_key(s) << ',' << net.node_key(d) << ",2016\n";
  }
  {
    csv::Writer w(ms.output("nodes.csv"), "id,country");
    for (uint32_t v = 0; v < net.node_count(); ++v)
      w.stream() << net.node_key(v) << ',' << net.node_country(v) << '\n';
  }
  config_kv(ms.m, "nodes", std::to_string(p.n_nodes));
  config_kv(ms.m, "mix", csv::format_double(p.component_mix));
  config_kv(ms.m, "exponent", csv::format_double(p.attachment_exponent));
  config_kv(ms.m, "edges_per_node", std::to_string(p.edges_per_node));
  config_kv(ms.m, "countries", std::to_string(p.n_countries));
  config_kv(ms.m, "assortativity", csv::format_double(p.country_assortativity));
  ms.finish();
  std::cerr << "gen shareholding: " << net.node_count() << " nodes, " << net.edge_count()
            << " edges\n";
  return 0;
}

// ---------------------------------------------------------------------------
// build

struct BuildArgs {
  std::string edges, nodes, kind = "patent", window = "2008:2016";
  std::string multiplicity = "simple";
  std::string year;     // optional filter
  std::string country;  // optional partition
  int expand_depth = 0;
};

void warn_unknown_countries(const LoadStats& stats) {
  if (stats.unknown_countries > 0)
    std::cerr << "warning: " << stats.unknown_countries
              << " node(s) carry unrecognised country codes, stored as ??\n";
}

int run_build(const BuildArgs& args, const GlobalOpts& g, int argc, char** argv) {
  ManifestScope ms("build", g, argc, argv);
  FirmTable table;
  LoadStats stats;
  LoadOptions opts;
  opts.window = parse_window(args.window);
  if (!args.nodes.empty()) {
    ms.input(args.nodes);
    load_nodes(args.nodes, table, stats);
    warn_unknown_countries(stats);
  }
  ms.input(args.edges);
  EdgeKind kind = args.kind == "share" ? EdgeKind::Share : EdgeKind::Patent;
  auto records = load_edges(args.edges, kind, table, stats, opts);

  BuildOptions bopts;
  bopts.multiplicity = args.multiplicity == "multi" ? Multiplicity::Multi : Multiplicity::Simple;
  if (!args.year.empty()) bopts.year_filter = parse_window(args.year);
  Network net = build_network(records, table, bopts);
  if (!args.country.empty()) {
    net = country_partition(net, args.country);
    if (net.node_count() == 0)
      std::cerr << "build: warning: no nodes carry country '" << args.country << "'\n";
  }
  if (args.expand_depth > 1) net = expand_indirect(net, args.expand_depth);

  TopologySummary s = summarize(net);
  {
    csv::Writer w(ms.output("summary.csv"), "metric,value");
    w.stream() << "nodes," << s.nodes << '\n';
    w.stream() << "edges," << s.edges << '\n';
    w.stream() << "avg_degree," << csv::format_double(s.avg_degree) << '\n';
    w.stream() << "median_degree," << csv::format_double(s.median_degree) << '\n';
    w.stream() << "component_count," << s.component_count << '\n';
    w.stream() << "largest_component_nodes," << s.largest_component_nodes << '\n';
    w.stream() << "largest_component_fraction," << csv::format_double(s.largest_component_fraction)
               << '\n';
    w.stream() << "self_loops_dropped," << stats.self_loops_dropped << '\n';
    w.stream() << "duplicates_dropped," << stats.duplicates_dropped << '\n';
    w.stream() << "out_of_window_dropped," << stats.out_of_window_dropped << '\n';
  }
  {
    csv::Writer w(ms.output("degree_histogram.csv"), "degree,count");
    for (const auto& [d, c] : s.degree_histogram) w.stream() << d << ',' << c << '\n';
  }
  config_kv(ms.m, "kind", args.kind);
  config_kv(ms.m, "multiplicity", args.multiplicity);
  config_kv(ms.m, "window", args.window);
  if (!args.year.empty()) config_kv(ms.m, "year", args.year);
  if (!args.country.empty()) config_kv(ms.m, "country", args.country);
  if (args.expand_depth > 0) config_kv(ms.m, "expand_depth", std::to_string(args.expand_depth));
  ms.finish();
  std::cerr << "build: " << s.nodes << " nodes, " << s.edges << " edges, " << s.component_count
            << " components\n";
  return 0;
}

// ---------------------------------------------------------------------------
// overlap

struct OverlapArgs {
  std::string patents, shares, nodes;
  std::string window = "2008:2016";
  std::string pairs_from;
};

int run_overlap(const OverlapArgs& args, const GlobalOpts& g, int argc, char** argv) {
  ManifestScope ms("overlap", g, argc, argv);
  FirmTable table;
  LoadStats stats;
  LoadOptions opts;
  opts.window = parse_window(args.window);
  if (!args.nodes.empty()) {
    ms.input(args.nodes);
    load_nodes(args.nodes, table, stats);
    warn_unknown_countries(stats);
  }
  ms.input(args.patents);
  ms.input(args.shares);
  auto patents = load_edges(args.patents, EdgeKind::Patent, table, stats, opts);
  auto shares = load_edges(args.shares, EdgeKind::Share, table, stats, opts);

  ExistenceSet set;
  if (args.pairs_from.empty()) {
    set = build_existence_matrices(patents, shares, opts.window, table);
  } else {
    ms.input(args.pairs_from);
    ExistenceDump dump = read_existence_csv(args.pairs_from, table, opts.window);
    set = build_existence_matrices(patents, shares, opts.window, table, PairScope::ExplicitList,
                                   dump.pairs);
  }
  if (set.items.empty()) std::cerr << "overlap: warning: empty pair scope\n";
  write_existence_csv(ms.output("existence.csv"), set);
  {
    csv::Writer w(ms.output("overlap_summary.csv"), "year,nodes,edges");
    for (int year = opts.window.start; year <= opts.window.end; ++year) {
      OverlapNetwork ov = build_overlap_network(set, year);
      w.stream() << year << ',' << ov.network.node_count() << ',' << ov.network.edge_count()
                 << '\n';
    }
  }
  config_kv(ms.m, "window", args.window);
  config_kv(ms.m, "pairs", std::to_string(set.items.size()));
  ms.finish();
  std::cerr << "overlap: " << set.items.size() << " observed pairs\n";
  return 0;
}

// ---------------------------------------------------------------------------
// infodyn

struct InfodynArgs {
  std::string patents, shares, nodes;
  std::string window = "2008:2016";
  std::string measure = "all";
  std::string delays = "0..6";
  std::string k = "5";
  int l = 1, tau_x = 1, tau_y = 1;
  int surrogates = 200;
  std::string split;
  std::string pairs_from;
};

// --split tokens: intra | international | unknown | CC-intra | CC-international
ExistenceSet split_by_token(const ExistenceSet& base, std::string_view token) {
  if (token == "intra") return split_scope(base, ScopeMode::IntraNational);
  if (token == "international") return split_scope(base, ScopeMode::International);
  if (token == "unknown") return split_scope(base, ScopeMode::Unknown);
  auto dash = token.find('-');
  if (dash == 2) {
    std::string_view country = token.substr(0, 2);
    std::string_view mode = token.substr(3);
    if (mode == "intra") return split_scope_country(base, country, ScopeMode::IntraNational);
    if (mode == "international")
      return split_scope_country(base, country, ScopeMode::International);
  }
  throw CLI::ValidationError(
      "--split", "expected intra, international, unknown, CC-intra or CC-international");
}

int run_infodyn(const InfodynArgs& args, const GlobalOpts& g, int argc, char** argv) {
  ManifestScope ms("infodyn", g, argc, argv);
  FirmTable table;
  LoadStats stats;
  LoadOptions opts;
  opts.window = parse_window(args.window);
  if (!args.nodes.empty()) {
    ms.input(args.nodes);
    load_nodes(args.nodes, table, stats);
    warn_unknown_countries(stats);
  }
  ms.input(args.patents);
  ms.input(args.shares);
  auto patents = load_edges(args.patents, EdgeKind::Patent, table, stats, opts);
  auto shares = load_edges(args.shares, EdgeKind::Share, table, stats, opts);
  ExistenceSet base;
  if (args.pairs_from.empty()) {
    base = build_existence_matrices(patents, shares, opts.window, table);
  } else {
    ms.input(args.pairs_from);
    ExistenceDump dump = read_existence_csv(args.pairs_from, table, opts.window);
    base = build_existence_matrices(patents, shares, opts.window, table, PairScope::ExplicitList,
                                    dump.pairs);
  }

  std::vector<info::Measure> measures;
  if (args.measure == "all") {
    measures = {info::Measure::MI_PS, info::Measure::MI_SP, info::Measure::AIS_P,
                info::Measure::AIS_S, info::Measure::TE_PS, info::Measure::TE_SP};
  } else {
    for (auto name : csv::split(args.measure)) {
      auto m = info::measure_from_name(name);
      if (!m) throw CLI::ValidationError("--measure", "unknown measure '" + std::string(name) + "'");
      measures.push_back(*m);
    }
  }
  std::vector<int> delays = parse_int_list(args.delays, "--delays");

  std::vector<std::pair<std::string, ExistenceSet>> scopes;
  if (args.split.empty()) {
    scopes.emplace_back("all", std::move(base));
  } else {
    scopes.emplace_back("all", base);
    for (auto name : csv::split(args.split))
      scopes.emplace_back(std::string(name), split_by_token(base, name));
  }

  int threads = effective_threads(g.threads);
  std::vector<info::AggregateResult> rows;
  for (const auto& [scope_name, set] : scopes) {
    if (set.items.empty()) {
      std::cerr << "infodyn: warning: scope '" << scope_name << "' has no pairs, skipped\n";
      continue;
    }
    for (info::Measure measure : measures) {
      info::InfoParams params;
      params.l = args.l;
      params.tau_x = args.tau_x;
      params.tau_y = args.tau_y;
      if (args.k == "auto-ais") {
        bool is_te = measure == info::Measure::TE_PS || measure == info::Measure::TE_SP;
        params.k = is_te ? info::auto_target_embedding(set, measure)
                         : info::InfoParams{}.k;
        config_kv(ms.m, std::string("k_auto_") + info::measure_name(measure) + "_" + scope_name,
                  std::to_string(params.k));
      } else {
        long k = 0;
        if (!csv::parse_int(args.k, k) || k < 1)
          throw CLI::ValidationError("--k", "expected positive integer or auto-ais");
        params.k = static_cast<int>(k);
      }
      bool delay_applies = measure != info::Measure::AIS_P && measure != info::Measure::AIS_S;
      std::vector<int> use_delays = delay_applies ? delays : std::vector<int>{0};
      for (int u : use_delays) {
        params.u = u;
        info::AggregateResult r =
            info::aggregate_over_edges(set, measure, params, args.surrogates, g.seed, threads);
        r.scope = scope_name;
        rows.push_back(r);
      }
    }
  }
  if (rows.empty()) throw DataError("infodyn: no scope produced any results");
  info::write_results_csv(ms.output("results.csv"), rows, /*with_scope_column=*/!args.split.empty());

  config_kv(ms.m, "measure", args.measure);
  config_kv(ms.m, "delays", args.delays);
  config_kv(ms.m, "k", args.k);
  config_kv(ms.m, "l", std::to_string(args.l));
  config_kv(ms.m, "tau_x", std::to_string(args.tau_x));
  config_kv(ms.m, "tau_y", std::to_string(args.tau_y));
  config_kv(ms.m, "surrogates", std::to_string(args.surrogates));
  config_kv(ms.m, "window", args.window);
  if (!args.split.empty()) config_kv(ms.m, "split", args.split);
  ms.finish();
  std::cerr << "infodyn: " << rows.size() << " result rows\n";
  return 0;
}

// ---------------------------------------------------------------------------
// cascade

struct CascadeArgs {
  std::string edges, nodes;
  std::string mode = "run";
  std::string alpha = "0.2", gamma = "1";
  int steps = 50;
  double shock = 0.1;
  int replicates = 1;
  std::string countries;
  std::string dump_matrix;
  std::string window = "1900:2100";
};

int run_cascade(const CascadeArgs& args, const GlobalOpts& g, int argc, char** argv) {
  ManifestScope ms("cascade", g, argc, argv);
  FirmTable table;
  LoadStats stats;
  LoadOptions opts;
  opts.window = parse_window(args.window);
  if (!args.nodes.empty()) {
    ms.input(args.nodes);
    load_nodes(args.nodes, table, stats);
    warn_unknown_countries(stats);
  }
  ms.input(args.edges);
  auto records = load_edges(args.edges, EdgeKind::Share, table, stats, opts);
  Network net = build_network(records, table, BuildOptions{});

  int threads = effective_threads(g.threads);
  std::vector<double> alphas = parse_double_grid(args.alpha, "--alpha");
  std::vector<double> gammas = parse_double_grid(args.gamma, "--gamma");

  if (args.mode == "run") {
    cascade::CascadeParams params;
    params.alpha = alphas.front();
    params.gamma = gammas.front();
    params.steps = args.steps;
    params.shock_fraction = args.shock;
    params.seed = g.seed;
    cascade::RunOptions ropts;
    ropts.keep_failure_matrix = !args.dump_matrix.empty();
    cascade::RunResult res = cascade::run(net, params, ropts);
    if (ropts.keep_failure_matrix) {
      if (res.matrix_refused) {
        std::cerr << "cascade: warning: failure matrix exceeds bit budget, dump skipped\n";
      } else {
        res.matrix->write((ms.dir / args.dump_matrix).string());
        ms.m.outputs.push_back(args.dump_matrix);
      }
    }
    cascade::SweepRow row{params.alpha, params.gamma, 0, params.seed,
                          res.metrics.mean_downtime, res.metrics.failure_proportion};
    cascade::write_sweep_csv(ms.output("run.csv"), std::span(&row, 1));
    csv::Writer w(ms.output("per_step.csv"), "step,new_failures");
    for (size_t t = 0; t < res.metrics.per_step_new_failures.size(); ++t)
      w.stream() << t + 1 << ',' << res.metrics.per_step_new_failures[t] << '\n';
  } else if (args.mode == "sweep") {
    auto rows = cascade::sweep(net, alphas, gammas, args.steps, args.replicates, g.seed,
                               args.shock, threads);
    cascade::write_sweep_csv(ms.output("sweep.csv"), rows);
  } else if (args.mode == "country") {
    if (!net.has_countries()) throw DataError("cascade country mode requires a nodes file");
    std::map<std::string, Network> nets;
    if (args.countries.empty()) {
      std::set<std::string> seen;
      for (uint32_t v = 0; v < net.node_count(); ++v) {
        const std::string& c = net.node_country(v);
        if (!c.empty() && c != "??") seen.insert(c);
      }
      for (const auto& c : seen) nets.emplace(c, country_partition(net, c));
    } else {
      for (auto c : csv::split(args.countries)) nets.emplace(c, country_partition(net, std::string(c)));
    }
    cascade::CascadeParams params;
    params.alpha = alphas.front();
    params.gamma = gammas.front();
    params.steps = args.steps;
    params.shock_fraction = args.shock;
    params.seed = g.seed;
    auto rows = cascade::country_sweep(nets, params, threads);
    cascade::write_country_csv(ms.output("country.csv"), rows);
  } else {
    throw CLI::ValidationError("--mode", "expected run, sweep or country");
  }

  config_kv(ms.m, "mode", args.mode);
  config_kv(ms.m, "alpha", args.alpha);
  config_kv(ms.m, "gamma", args.gamma);
  config_kv(ms.m, "T", std::to_string(args.steps));
  config_kv(ms.m, "shock", csv::format_double(args.shock));
  config_kv(ms.m, "replicates", std::to_string(args.replicates));
  if (!args.countries.empty()) config_kv(ms.m, "countries", args.countries);
  ms.finish();
  return 0;
}

// ---------------------------------------------------------------------------
// report

int run_report(const std::string& input, const GlobalOpts& g, int argc, char** argv) {
  ManifestScope ms("report", g, argc, argv);
  ms.input(input);
  std::ifstream in(input);
  if (!in) throw DataError("cannot open file: " + input);
  std::string header;
  std::getline(in, header);
  if (!header.empty() && header.back() == '\r') header.pop_back();

  std::ofstream out(ms.output("report.md"));
  out << "# firmnet report\n\ninput: `" << input << "`\n\n";
  if (header.rfind("alpha,gamma,", 0) == 0) {
    // sweep table -> per-cell means
    std::vector<cascade::SweepRow> rows;
    csv::for_each_row(input, header, [&](size_t, const auto& f) {
      cascade::SweepRow r;
      long rep = 0;
      double seed_d = 0;
      csv::parse_double(f[0], r.alpha);
      csv::parse_double(f[1], r.gamma);
      csv::parse_int(f[2], rep);
      csv::parse_double(f[3], seed_d);
      csv::parse_double(f[4], r.mean_downtime);
      csv::parse_double(f[5], r.failure_proportion);
      r.replicate = static_cast<int>(rep);
      rows.push_back(r);
    });
    auto cells = cascade::sweep_cell_stats(rows);
    out << "| alpha | gamma | mean_downtime | se | failure_proportion | se | n |\n";
    out << "|---|---|---|---|---|---|---|\n";
    for (const auto& c : cells) {
      out << "| " << c.alpha << " | " << c.gamma << " | " << c.mean_downtime << " | "
          << c.se_downtime << " | " << c.mean_failure << " | " << c.se_failure << " | "
          << c.replicates << " |\n";
    }
  } else {
    // passthrough table
    out << "| " << header << " |\n|";
    for (char ch : header)
      if (ch == ',') out << "---|";
    out << "---|\n";
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      for (auto& ch : line)
        if (ch == ',') ch = '|';
      out << "| " << line << " |\n";
    }
  }
  ms.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interfirm network information dynamics and cascading failure toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "flat key=value config file (flags take precedence)");

  GlobalOpts g;
  app.add_option("--seed", g.seed, "master RNG seed")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--out", g.out, "output directory")->capture_default_str();

  // gen
  auto* gen = app.add_subcommand("gen", "generate synthetic datasets");
  gen->require_subcommand(1);
  GenCoupledArgs gc;
  auto* gen_coupled = gen->add_subcommand("coupled", "coupled patent/shareholding histories");
  gen_coupled->add_option("--pairs", gc.p.n_pairs, "firm pairs")->capture_default_str();
  std::string gc_window = "2008:2016";
  gen_coupled->add_option("--window", gc_window, "year window START:END")->capture_default_str();
  gen_coupled->add_option("--p-patent", gc.p.p_patent, "per-year patent probability")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  gen_coupled->add_option("--q-convert", gc.p.q_convert, "conversion probability")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  gen_coupled->add_option("--delay", gc.p.d_delay, "planted delay (years)")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  gen_coupled->add_option("--noise", gc.p.p_noise_share, "spontaneous share probability")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  gen_coupled->add_option("--countries", gc.p.n_countries, "distinct country labels")
      ->check(CLI::PositiveNumber)->capture_default_str();

  GenShareArgs gs;
  auto* gen_share = gen->add_subcommand("shareholding", "heavy-tailed directed network");
  gen_share->add_option("--nodes", gs.p.n_nodes, "node count")->capture_default_str();
  gen_share->add_option("--mix", gs.p.component_mix, "fraction of nodes in isolated dyads")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  gen_share->add_option("--exponent", gs.p.attachment_exponent, "attachment exponent")
      ->check(CLI::Range(0.0, 3.0))->capture_default_str();
  gen_share->add_option("--edges-per-node", gs.p.edges_per_node, "out-edges per attached node")
      ->check(CLI::PositiveNumber)->capture_default_str();
  gen_share->add_option("--countries", gs.p.n_countries, "distinct country labels")
      ->check(CLI::PositiveNumber)->capture_default_str();
  gen_share->add_option("--assort", gs.p.country_assortativity, "country assortativity")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();

  // build
  BuildArgs build_args;
  auto* build = app.add_subcommand("build", "load edges and summarize network topology");
  build->add_option("--edges", build_args.edges, "edges CSV (src,dst,year)")->required();
  build->add_option("--nodes", build_args.nodes, "nodes CSV (id,country)");
  build->add_option("--kind", build_args.kind, "patent (undirected) or share (directed)")
      ->check(CLI::IsMember({"patent", "share"}))->capture_default_str();
  build->add_option("--multiplicity", build_args.multiplicity, "simple or multi")
      ->check(CLI::IsMember({"simple", "multi"}))->capture_default_str();
  build->add_option("--window", build_args.window, "data window START:END")->capture_default_str();
  build->add_option("--year", build_args.year, "build-time year filter YEAR or START:END");
  build->add_option("--country", build_args.country, "restrict to one country");
  build->add_option("--expand-depth", build_args.expand_depth,
                    "add indirect shareholding edges up to this depth")
      ->check(CLI::Range(0, 16));

  // overlap
  OverlapArgs overlap_args;
  auto* overlap = app.add_subcommand("overlap", "edge-existence matrices and per-year overlaps");
  overlap->add_option("--patents", overlap_args.patents, "patent edges CSV")->required();
  overlap->add_option("--shares", overlap_args.shares, "share edges CSV")->required();
  overlap->add_option("--nodes", overlap_args.nodes, "nodes CSV (id,country)");
  overlap->add_option("--window", overlap_args.window, "year window START:END")->capture_default_str();
  overlap->add_option("--pairs-from", overlap_args.pairs_from,
                      "existence dump fixing the pair population (explicit-list scope)");

  // infodyn
  InfodynArgs info_args;
  auto* infodyn = app.add_subcommand("infodyn", "information measures over the edge population");
  infodyn->add_option("--patents", info_args.patents, "patent edges CSV")->required();
  infodyn->add_option("--shares", info_args.shares, "share edges CSV")->required();
  infodyn->add_option("--nodes", info_args.nodes, "nodes CSV (id,country)");
  infodyn->add_option("--window", info_args.window, "year window START:END")->capture_default_str();
  infodyn->add_option("--measure", info_args.measure,
                      "mi, mi-sp, ais-p, ais-s, te-ps, te-sp or all (comma list)")
      ->capture_default_str();
  infodyn->add_option("--delays", info_args.delays, "source-target delays (LO..HI or list)")
      ->capture_default_str();
  infodyn->add_option("--k", info_args.k, "target embedding length or auto-ais")->capture_default_str();
  infodyn->add_option("--l", info_args.l, "source embedding length")->check(CLI::PositiveNumber)
      ->capture_default_str();
  infodyn->add_option("--tau-x", info_args.tau_x, "target sampling interval")
      ->check(CLI::PositiveNumber)->capture_default_str();
  infodyn->add_option("--tau-y", info_args.tau_y, "source sampling interval")
      ->check(CLI::PositiveNumber)->capture_default_str();
  infodyn->add_option("--surrogates", info_args.surrogates, "surrogates per edge (0 = skip)")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  infodyn->add_option("--split", info_args.split,
                      "scopes: intra, international, unknown, CC-intra, CC-international");
  infodyn->add_option("--pairs-from", info_args.pairs_from,
                      "existence dump fixing the measured pair population");

  // cascade
  CascadeArgs cascade_args;
  auto* cascade_cmd = app.add_subcommand("cascade", "stochastic cascading-failure simulation");
  cascade_cmd->add_option("--edges", cascade_args.edges, "share edges CSV")->required();
  cascade_cmd->add_option("--nodes", cascade_args.nodes, "nodes CSV (id,country)");
  cascade_cmd->add_option("--mode", cascade_args.mode, "run, sweep or country")
      ->check(CLI::IsMember({"run", "sweep", "country"}))->capture_default_str();
  cascade_cmd->add_option("--alpha", cascade_args.alpha, "cumulative failure rate (value, list or LO:HI:STEP)")
      ->capture_default_str();
  cascade_cmd->add_option("--gamma", cascade_args.gamma, "overall discount rate (value, list or LO:HI:STEP)")
      ->capture_default_str();
  cascade_cmd->add_option("--T", cascade_args.steps, "time steps")->check(CLI::PositiveNumber)
      ->capture_default_str();
  cascade_cmd->add_option("--shock", cascade_args.shock, "initial shock fraction")
      ->check(CLI::Range(0.0, 0.999999))->capture_default_str();
  cascade_cmd->add_option("--replicates", cascade_args.replicates, "replicates per sweep cell")
      ->check(CLI::PositiveNumber)->capture_default_str();
  cascade_cmd->add_option("--countries", cascade_args.countries, "country codes for country mode");
  cascade_cmd->add_option("--dump-failure-matrix", cascade_args.dump_matrix,
                          "write bit-packed failure matrix (FMX1) to this file");
  cascade_cmd->add_option("--window", cascade_args.window, "data window START:END")
      ->capture_default_str();

  // report
  std::string report_input;
  auto* report = app.add_subcommand("report", "render a results CSV as markdown");
  report->add_option("--input", report_input, "results.csv or sweep.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen_coupled->parsed()) {
      synth::CoupledGenParams p = gc.p;
      YearWindow w = parse_window(gc_window);
      p.years = w;
      GenCoupledArgs a{p};
      return run_gen_coupled(a, g, argc, argv);
    }
    if (gen_share->parsed()) return run_gen_shareholding(gs, g, argc, argv);
    if (build->parsed()) return run_build(build_args, g, argc, argv);
    if (overlap->parsed()) return run_overlap(overlap_args, g, argc, argv);
    if (infodyn->parsed()) return run_infodyn(info_args, g, argc, argv);
    if (cascade_cmd->parsed()) return run_cascade(cascade_args, g, argc, argv);
    if (report->parsed()) return run_report(report_input, g, argc, argv);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
