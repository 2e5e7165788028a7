#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "firmnet/firm_table.hpp"
#include "firmnet/network.hpp"
#include "firmnet/records.hpp"

namespace firmnet::synth {

// Coupled two-layer temporal generator with a planted patent -> shareholding
// causal delay: a patent event in year t converts with probability q into a
// shareholding relation in force from year t+d to the window end.
struct CoupledGenParams {
  uint32_t n_pairs = 5000;
  YearWindow years{2008, 2016};
  double p_patent = 0.3;        // per-year probability of a patent event per pair
  double q_convert = 0.6;       // conversion probability per patent event
  int d_delay = 4;              // planted delay in years
  double p_noise_share = 0.02;  // per-year probability of a spontaneous (single-year) relation
  int n_countries = 1;
  uint64_t seed = 0;
  void validate() const;
};

struct CoupledTruth {
  std::vector<uint32_t> converted_pairs;  // pair indices with >= 1 planted conversion
  int d_delay = 0;
};

struct CoupledData {
  std::shared_ptr<FirmTable> table;
  std::vector<TemporalEdgeRecord> patent_records;
  std::vector<TemporalEdgeRecord> share_records;
  CoupledTruth truth;
};

CoupledData gen_coupled(const CoupledGenParams& params);

// Heavy-tailed directed shareholding generator: a configurable fraction of
// nodes sits in isolated investee->shareholder dyads, the rest grows by
// preferential attachment on in-degree (edge from the new investee to an
// established shareholder).
struct ShareGenParams {
  uint32_t n_nodes = 100000;
  double attachment_exponent = 1.0;  // target weight (in_degree + 1)^exponent
  double component_mix = 0.8;        // fraction of nodes placed in isolated dyads
  int edges_per_node = 1;            // out-edges per attached node
  int n_countries = 20;
  double country_assortativity = 0.0;  // probability a node copies its partner's country
  uint64_t seed = 0;
  void validate() const;
};

Network gen_shareholding(const ShareGenParams& params);

// ISO-3166 alpha-2 codes for the twenty largest economies; generators draw
// country labels from a prefix of this list.
std::span<const char* const> top20_countries();

}  // namespace firmnet::synth
