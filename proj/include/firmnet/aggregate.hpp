#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "firmnet/existence.hpp"
#include "firmnet/info.hpp"

namespace firmnet::info {

// Edge-population measures over existence matrices. MI_PS pairs P_t with
// S_{t+u} (shareholding from later years); MI_SP the reverse orientation.
// TE_PS transfers patent history into shareholding, TE_SP the reverse.
enum class Measure { MI_PS, MI_SP, AIS_P, AIS_S, TE_PS, TE_SP };

const char* measure_name(Measure m);
std::optional<Measure> measure_from_name(std::string_view name);

struct AggregateResult {
  Measure measure = Measure::MI_PS;
  InfoParams params;
  double value_bits = 0;               // mean over edges where estimation succeeded
  std::optional<double> p_combined;    // Fisher-combined per-edge p-values
  uint64_t population = 0;             // edges that contributed
  uint64_t degenerate = 0;             // edges whose involved columns were constant
  int n_samples = 0;                   // per-edge sample count
  std::string scope = "all";
};

// Per-edge estimation with per-edge surrogate p-values, averaged
// arithmetically and Fisher-combined. Each edge's surrogate stream is keyed
// by (master seed, pair key), so results are independent of thread count.
// n_surrogates = 0 skips significance testing.
AggregateResult aggregate_over_edges(const ExistenceSet& set, Measure measure,
                                     const InfoParams& params, int n_surrogates,
                                     uint64_t master_seed, int threads = 1);

// The embedding-selection rule used for transfer entropy: pick the k in
// [1, k_cap] maximizing the aggregate AIS of the target variable; ties go to
// the smaller k.
int auto_target_embedding(const ExistenceSet& set, Measure te_measure, int k_cap = 8);

void write_results_csv(const std::string& path, std::span<const AggregateResult> rows,
                       bool with_scope_column);

}  // namespace firmnet::info
