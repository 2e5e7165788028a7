#include "firmnet/aggregate.hpp"

#include <algorithm>
#include <cmath>

#include "firmnet/csv.hpp"
#include "firmnet/errors.hpp"
#include "firmnet/parallel.hpp"
#include "firmnet/rng.hpp"
#include "firmnet/significance.hpp"

namespace firmnet::info {

namespace {

bool is_constant(std::span<const uint8_t> s) {
  for (uint8_t v : s) {
    if (v != s.front()) return false;
  }
  return true;
}

// A surrogate test is structurally degenerate when its p-value is 1 for
// every data realization: either all permutations of the shuffled series
// coincide, or the measure is pinned at 0 by the unshuffled side (constant
// aligned columns; a target whose history determines its next state). Such
// edges carry no evidence either way and are excluded from the Fisher
// combination; their 0-bit estimates still enter the population average.
bool edge_test_degenerate(Measure measure, const EdgeExistenceMatrix& m,
                          const InfoParams& params) {
  auto aligned_constant = [&](std::span<const uint8_t> x, std::span<const uint8_t> y) {
    int n = mi_sample_count(x.size(), y.size(), params.u);
    if (n < 2) return true;
    return is_constant(x.subspan(params.u, n)) || is_constant(y.first(n));
  };
  switch (measure) {
    case Measure::MI_PS:
      return aligned_constant(m.share, m.patent);
    case Measure::MI_SP:
      return aligned_constant(m.patent, m.share);
    case Measure::AIS_P:
      return is_constant(m.patent);
    case Measure::AIS_S:
      return is_constant(m.share);
    case Measure::TE_PS:
      return is_constant(m.patent) ||
             conditional_next_entropy_bits(m.share, params.k, params.tau_x) == 0.0;
    case Measure::TE_SP:
      return is_constant(m.share) ||
             conditional_next_entropy_bits(m.patent, params.k, params.tau_x) == 0.0;
  }
  return false;
}

struct EdgeOutcome {
  double value = 0;
  double p = 1.0;
  bool succeeded = false;
  bool degenerate = false;
};

// Measure closure over one edge's P/S columns.
MeasureFn edge_measure(Measure measure, const InfoParams& params) {
  switch (measure) {
    case Measure::MI_PS:
      // x = share (later years), y = patent
      return [u = params.u](std::span<const uint8_t> x, std::span<const uint8_t> y) {
        return mutual_information_bits(x, y, u);
      };
    case Measure::MI_SP:
      return [u = params.u](std::span<const uint8_t> x, std::span<const uint8_t> y) {
        return mutual_information_bits(x, y, u);
      };
    case Measure::AIS_P:
    case Measure::AIS_S:
      // Surrogates permute the series itself (second argument).
      return [k = params.k, tau = params.tau_x](std::span<const uint8_t>,
                                                std::span<const uint8_t> y) {
        return active_information_storage_bits(y, k, tau);
      };
    case Measure::TE_PS:
    case Measure::TE_SP:
      return [params](std::span<const uint8_t> x, std::span<const uint8_t> y) {
        return transfer_entropy_bits(y, x, params);  // y = source, x = target
      };
  }
  throw DataError("unknown measure");
}

// (x, y) argument mapping per measure: x is the target/delayed series, y the
// one surrogates shuffle.
void edge_series(Measure measure, const EdgeExistenceMatrix& m, std::span<const uint8_t>& x,
                 std::span<const uint8_t>& y) {
  switch (measure) {
    case Measure::MI_PS:
      x = m.share;
      y = m.patent;
      break;
    case Measure::MI_SP:
      x = m.patent;
      y = m.share;
      break;
    case Measure::AIS_P:
      x = m.patent;
      y = m.patent;
      break;
    case Measure::AIS_S:
      x = m.share;
      y = m.share;
      break;
    case Measure::TE_PS:
      x = m.share;
      y = m.patent;
      break;
    case Measure::TE_SP:
      x = m.patent;
      y = m.share;
      break;
  }
}

}  // namespace

const char* measure_name(Measure m) {
  switch (m) {
    case Measure::MI_PS: return "mi";
    case Measure::MI_SP: return "mi-sp";
    case Measure::AIS_P: return "ais-p";
    case Measure::AIS_S: return "ais-s";
    case Measure::TE_PS: return "te-ps";
    case Measure::TE_SP: return "te-sp";
  }
  return "?";
}

std::optional<Measure> measure_from_name(std::string_view name) {
  for (Measure m : {Measure::MI_PS, Measure::MI_SP, Measure::AIS_P, Measure::AIS_S,
                    Measure::TE_PS, Measure::TE_SP}) {
    if (name == measure_name(m)) return m;
  }
  if (name == "mi-ps") return Measure::MI_PS;
  return std::nullopt;
}

AggregateResult aggregate_over_edges(const ExistenceSet& set, Measure measure,
                                     const InfoParams& params, int n_surrogates,
                                     uint64_t master_seed, int threads) {
  if (set.items.empty()) throw DataError("aggregate_over_edges: empty edge population");
  params.validate();

  MeasureFn fn = edge_measure(measure, params);
  std::vector<EdgeOutcome> outcomes(set.items.size());
  parallel_for(set.items.size(), threads, [&](size_t i) {
    const auto& m = set.items[i];
    std::span<const uint8_t> x, y;
    edge_series(measure, m, x, y);
    EdgeOutcome& out = outcomes[i];
    try {
      out.value = fn(x, y);
      out.succeeded = true;
      out.degenerate = edge_test_degenerate(measure, m, params);
      if (n_surrogates > 0 && !out.degenerate) {
        uint64_t edge_seed = rng::mix64(master_seed, m.pair.packed());
        out.p = surrogate_p_value(fn, x, y, n_surrogates, edge_seed);
      }
    } catch (const InsufficientData&) {
      out.succeeded = false;
    }
  });

  AggregateResult res;
  res.measure = measure;
  res.params = params;
  double sum = 0;
  std::vector<double> ps;
  for (const auto& out : outcomes) {
    if (!out.succeeded) continue;
    ++res.population;
    sum += out.value;
    if (out.degenerate) ++res.degenerate;
    if (n_surrogates > 0 && !out.degenerate) ps.push_back(out.p);
  }
  if (res.population == 0)
    throw DataError("aggregate_over_edges: estimator failed on every edge");
  res.value_bits = sum / static_cast<double>(res.population);
  if (!ps.empty()) res.p_combined = fisher_combine(ps).p;

  // Per-edge sample count for the CSV; uniform across the fixed window.
  const auto& first = set.items.front();
  std::span<const uint8_t> x, y;
  edge_series(measure, first, x, y);
  switch (measure) {
    case Measure::MI_PS:
    case Measure::MI_SP:
      res.n_samples = mi_sample_count(x.size(), y.size(), params.u);
      break;
    case Measure::AIS_P:
    case Measure::AIS_S:
      res.n_samples = static_cast<int>(x.size()) - 1 - (params.k - 1) * params.tau_x;
      break;
    case Measure::TE_PS:
    case Measure::TE_SP:
      res.n_samples = static_cast<int>(embed_joint_counts(y, x, params).n_samples);
      break;
  }
  return res;
}

int auto_target_embedding(const ExistenceSet& set, Measure te_measure, int k_cap) {
  Measure ais = (te_measure == Measure::TE_PS) ? Measure::AIS_S : Measure::AIS_P;
  int window = set.window.length();
  int best_k = 1;
  double best_value = -1;
  for (int k = 1; k <= std::min(k_cap, window - 1); ++k) {
    InfoParams p;
    p.k = k;
    AggregateResult r = aggregate_over_edges(set, ais, p, /*n_surrogates=*/0, /*seed=*/0);
    if (r.value_bits > best_value + 1e-15) {
      best_value = r.value_bits;
      best_k = k;
    }
  }
  return best_k;
}

void write_results_csv(const std::string& path, std::span<const AggregateResult> rows,
                       bool with_scope_column) {
  std::string header = "measure,u,k,l,tau_x,tau_y,value_bits,p_combined,population,degenerate";
  if (with_scope_column) header += ",scope";
  csv::Writer w(path, header);
  for (const auto& r : rows) {
    w.stream() << measure_name(r.measure) << ',' << r.params.u << ',' << r.params.k << ','
               << r.params.l << ',' << r.params.tau_x << ',' << r.params.tau_y << ','
               << csv::format_double(r.value_bits) << ','
               << (r.p_combined ? csv::format_double(*r.p_combined) : "") << ',' << r.population
               << ',' << r.degenerate;
    if (with_scope_column) w.stream() << ',' << r.scope;
    w.stream() << '\n';
  }
}

}  // namespace firmnet::info
