#include "firmnet/cascade.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <numeric>

#include "firmnet/csv.hpp"
#include "firmnet/errors.hpp"
#include "firmnet/parallel.hpp"
#include "firmnet/rng.hpp"

namespace firmnet::cascade {

void CascadeParams::validate() const {
  if (alpha < 0.0 || alpha > 1.0) throw DataError("cascade: alpha must lie in [0,1]");
  if (gamma < 0.0) throw DataError("cascade: gamma must be >= 0");
  if (steps < 1) throw DataError("cascade: need at least 1 time step");
  if (shock_fraction < 0.0 || shock_fraction >= 1.0)
    throw DataError("cascade: shock fraction must lie in [0,1)");
}

StepParams derive_step_params(double alpha, double gamma, int steps) {
  if (alpha < 0.0 || alpha > 1.0) throw DataError("derive_step_params: alpha must lie in [0,1]");
  if (gamma < 0.0) throw DataError("derive_step_params: gamma must be >= 0");
  if (steps < 1) throw DataError("derive_step_params: steps must be >= 1");
  StepParams sp;
  sp.k_step = 1.0 - std::pow(1.0 - alpha, 2.0 / (steps + 1));
  sp.r_step = std::exp(gamma / steps) - 1.0;
  return sp;
}

std::vector<uint32_t> init_shock(uint32_t n, double fraction, uint64_t seed) {
  if (fraction < 0.0 || fraction >= 1.0) throw DataError("init_shock: fraction must lie in [0,1)");
  uint32_t m = static_cast<uint32_t>(fraction * static_cast<double>(n));
  std::vector<uint32_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  rng::Stream stream(rng::mix64(seed, rng::kDomainShock), 0);
  for (uint32_t i = 0; i < m; ++i) {
    uint32_t j = i + stream.next_below(n - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(m);
  std::sort(ids.begin(), ids.end());
  return ids;
}

Engine::Engine(const Network& net, const CascadeParams& params,
               std::optional<std::span<const uint32_t>> shock_override)
    : net_(net), params_(params) {
  params_.validate();
  if (!net.directed()) throw DataError("cascade: directed network required");
  if (net.multiplicity() != Multiplicity::Simple)
    throw DataError("cascade: simple network required (duplicate arcs would double-count influence)");
  sp_ = derive_step_params(params_.alpha, params_.gamma, params_.steps);

  uint32_t n = net.node_count();
  p_.assign(n, 0.0);
  failed_.assign(n, 0);
  influence_.assign(n, 0);

  std::vector<uint32_t> shock;
  if (shock_override) {
    shock.assign(shock_override->begin(), shock_override->end());
  } else {
    shock = init_shock(n, params_.shock_fraction, params_.seed);
  }
  for (uint32_t v : shock) {
    if (v >= n) throw DataError("cascade: shock node out of range");
    if (!failed_[v]) {
      failed_[v] = 1;
      ++failed_count_;
      newly_.push_back(v);
    }
  }
  shocked_ = failed_count_;
}

void Engine::step() {
  ++t_;
  // Scatter: count newly failed investees per shareholder.
  touched_.clear();
  for (uint32_t j : newly_) {
    for (uint32_t i : net_.out_neighbors(j)) {
      if (influence_[i] == 0) touched_.push_back(i);
      ++influence_[i];
    }
  }

  newly_.clear();
  uint32_t n = net_.node_count();
  double inv_1r = 1.0 / (1.0 + sp_.r_step);
  for (uint32_t i = 0; i < n; ++i) {
    if (failed_[i]) continue;
    double x = 0.0;
    if (influence_[i] > 0) {
      // d_in > 0 whenever influence arrived; x = m * k / d_in <= k.
      x = static_cast<double>(influence_[i]) * sp_.k_step /
          static_cast<double>(net_.in_degree(i));
    }
    double p = x + p_[i] * (1.0 - x) * inv_1r;
    assert(p >= 0.0 && p <= 1.0 + 1e-12);
    p_[i] = p;
    if (p > 0.0) {
      double z = rng::u01(rng::philox4x32(
          params_.seed, (uint64_t(rng::kDomainStep) << 32) | uint64_t(uint32_t(t_)), i)[0]);
      if (z < p) newly_.push_back(i);
    }
  }
  for (uint32_t v : touched_) influence_[v] = 0;
  for (uint32_t v : newly_) failed_[v] = 1;
  failed_count_ += newly_.size();
}

RunResult run(const Network& net, const CascadeParams& params, const RunOptions& opts) {
  std::optional<std::span<const uint32_t>> shock;
  if (opts.shock_override) shock = std::span<const uint32_t>(*opts.shock_override);
  Engine engine(net, params, shock);

  RunResult result;
  uint32_t n = net.node_count();
  uint64_t steps = static_cast<uint64_t>(params.steps);
  bool keep = opts.keep_failure_matrix;
  if (keep && static_cast<uint64_t>(n) * steps > opts.matrix_bit_budget) {
    keep = false;
    result.matrix_refused = true;
  }
  FailureMatrix fm;
  if (keep) {
    fm.nodes = n;
    fm.steps = steps;
    fm.bits.assign(fm.row_bytes() * steps, 0);
  }

  Metrics& m = result.metrics;
  m.shocked_nodes = engine.shocked_count();
  m.per_step_new_failures.reserve(steps);
  uint64_t sum_failed = 0;
  for (int t = 1; t <= params.steps; ++t) {
    engine.step();
    m.per_step_new_failures.push_back(engine.newly_failed().size());
    sum_failed += engine.failed_count();
    if (keep) {
      size_t base = (static_cast<size_t>(t) - 1) * fm.row_bytes();
      const auto& failed = engine.failed();
      for (uint32_t i = 0; i < n; ++i) {
        if (failed[i]) fm.bits[base + i / 8] |= uint8_t(1u << (i % 8));
      }
    }
  }

  if (n == 0) {
    m.empty_network = true;
    return result;
  }
  // Net both metrics of the realized shock (floor(shock*N)/N), so alpha = 0
  // yields exactly zero.
  double shock_share = static_cast<double>(m.shocked_nodes) / static_cast<double>(n);
  m.mean_downtime =
      static_cast<double>(sum_failed) / (static_cast<double>(n) * static_cast<double>(steps)) -
      shock_share;
  m.failure_proportion =
      static_cast<double>(engine.failed_count()) / static_cast<double>(n) - shock_share;
  if (net.edge_count() == 0) m.empty_network = true;
  if (keep) result.matrix = std::move(fm);
  return result;
}

void FailureMatrix::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open file for writing: " + path);
  out.write("FMX1", 4);
  uint64_t n_le = nodes, t_le = steps;  // little-endian hosts only
  out.write(reinterpret_cast<const char*>(&n_le), 8);
  out.write(reinterpret_cast<const char*>(&t_le), 8);
  out.write(reinterpret_cast<const char*>(bits.data()), static_cast<std::streamsize>(bits.size()));
}

FailureMatrix FailureMatrix::read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string_view(magic, 4) != "FMX1") throw DataError(path + ": bad FMX1 magic");
  FailureMatrix fm;
  in.read(reinterpret_cast<char*>(&fm.nodes), 8);
  in.read(reinterpret_cast<char*>(&fm.steps), 8);
  if (!in) throw DataError(path + ": truncated FMX1 header");
  fm.bits.resize(fm.row_bytes() * fm.steps);
  in.read(reinterpret_cast<char*>(fm.bits.data()), static_cast<std::streamsize>(fm.bits.size()));
  if (!in) throw DataError(path + ": truncated FMX1 payload");
  return fm;
}

std::vector<SweepRow> sweep(const Network& net, std::span<const double> alphas,
                            std::span<const double> gammas, int steps, int replicates,
                            uint64_t seed, double shock_fraction, int threads) {
  if (alphas.empty() || gammas.empty()) throw DataError("sweep: parameter grids must be nonempty");
  if (replicates < 1) throw DataError("sweep: replicates must be >= 1");

  std::vector<SweepRow> rows(alphas.size() * gammas.size() * static_cast<size_t>(replicates));
  size_t idx = 0;
  for (size_t a = 0; a < alphas.size(); ++a) {
    for (size_t g = 0; g < gammas.size(); ++g) {
      for (int rep = 0; rep < replicates; ++rep, ++idx) {
        SweepRow& row = rows[idx];
        row.alpha = alphas[a];
        row.gamma = gammas[g];
        row.replicate = rep;
        uint64_t cell = (uint64_t(a) << 40) | (uint64_t(g) << 20) | uint64_t(rep);
        row.seed = rng::mix64(rng::mix64(seed, rng::kDomainSweep), cell);
      }
    }
  }
  parallel_for(rows.size(), threads, [&](size_t i) {
    SweepRow& row = rows[i];
    CascadeParams params;
    params.alpha = row.alpha;
    params.gamma = row.gamma;
    params.steps = steps;
    params.shock_fraction = shock_fraction;
    params.seed = row.seed;
    RunResult res = run(net, params);
    row.mean_downtime = res.metrics.mean_downtime;
    row.failure_proportion = res.metrics.failure_proportion;
  });
  return rows;
}

std::vector<CellStats> sweep_cell_stats(std::span<const SweepRow> rows) {
  std::vector<CellStats> cells;
  auto cell_for = [&](double a, double g) -> CellStats& {
    for (auto& c : cells) {
      if (c.alpha == a && c.gamma == g) return c;
    }
    cells.push_back(CellStats{a, g, 0, 0, 0, 0, 0});
    return cells.back();
  };
  for (const auto& r : rows) {
    CellStats& c = cell_for(r.alpha, r.gamma);
    c.mean_downtime += r.mean_downtime;
    c.mean_failure += r.failure_proportion;
    ++c.replicates;
  }
  for (auto& c : cells) {
    c.mean_downtime /= c.replicates;
    c.mean_failure /= c.replicates;
  }
  for (const auto& r : rows) {
    CellStats& c = cell_for(r.alpha, r.gamma);
    c.se_downtime += (r.mean_downtime - c.mean_downtime) * (r.mean_downtime - c.mean_downtime);
    c.se_failure += (r.failure_proportion - c.mean_failure) * (r.failure_proportion - c.mean_failure);
  }
  for (auto& c : cells) {
    if (c.replicates > 1) {
      c.se_downtime = std::sqrt(c.se_downtime / (c.replicates - 1) / c.replicates);
      c.se_failure = std::sqrt(c.se_failure / (c.replicates - 1) / c.replicates);
    } else {
      c.se_downtime = c.se_failure = 0;
    }
  }
  return cells;
}

std::vector<CountryRow> country_sweep(const std::map<std::string, Network>& nets,
                                      const CascadeParams& params, int threads) {
  std::vector<const std::pair<const std::string, Network>*> entries;
  entries.reserve(nets.size());
  for (const auto& kv : nets) entries.push_back(&kv);

  std::vector<CountryRow> rows(entries.size());
  parallel_for(entries.size(), threads, [&](size_t i) {
    const auto& [country, net] = *entries[i];
    CountryRow& row = rows[i];
    row.country = country;
    row.nodes = net.node_count();
    row.edges = net.edge_count();
    if (net.node_count() == 0 || net.edge_count() == 0) {
      row.empty = true;
      return;
    }
    CascadeParams p = params;
    uint64_t salt = 0;
    for (char c : country) salt = salt * 131 + static_cast<unsigned char>(c);
    p.seed = rng::mix64(rng::mix64(params.seed, rng::kDomainCountry), salt);
    RunResult res = run(net, p);
    row.mean_downtime = res.metrics.mean_downtime;
    row.failure_proportion = res.metrics.failure_proportion;
  });
  std::stable_sort(rows.begin(), rows.end(), [](const CountryRow& a, const CountryRow& b) {
    return a.mean_downtime > b.mean_downtime;
  });
  return rows;
}

void write_sweep_csv(const std::string& path, std::span<const SweepRow> rows) {
  csv::Writer w(path, "alpha,gamma,replicate,seed,mean_downtime,failure_proportion");
  for (const auto& r : rows) {
    w.stream() << csv::format_double(r.alpha) << ',' << csv::format_double(r.gamma) << ','
               << r.replicate << ',' << r.seed << ',' << csv::format_double(r.mean_downtime) << ','
               << csv::format_double(r.failure_proportion) << '\n';
  }
}

void write_country_csv(const std::string& path, std::span<const CountryRow> rows) {
  csv::Writer w(path, "country,nodes,edges,mean_downtime,failure_proportion");
  for (const auto& r : rows) {
    w.stream() << r.country << ',' << r.nodes << ',' << r.edges << ','
               << csv::format_double(r.mean_downtime) << ','
               << csv::format_double(r.failure_proportion) << '\n';
  }
}

}  // namespace firmnet::cascade
