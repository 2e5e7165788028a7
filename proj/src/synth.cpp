#include "firmnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "firmnet/errors.hpp"
#include "firmnet/rng.hpp"

namespace firmnet::synth {

namespace {

constexpr const char* kTop20[] = {"US", "CN", "JP", "DE", "GB", "IN", "FR", "IT", "CA", "KR",
                                  "RU", "BR", "AU", "ES", "MX", "ID", "NL", "ZA", "TR", "CH"};

std::string country_code(int idx) {
  if (idx < 20) return kTop20[idx];
  // Synthetic two-letter codes past the builtin list.
  std::string code = "XA";
  code[1] = static_cast<char>('A' + (idx - 20) % 26);
  code[0] = static_cast<char>('X' - (idx - 20) / 26);
  return code;
}

void check_prob(double p, const char* name) {
  if (p < 0.0 || p > 1.0) throw DataError(std::string("synth: ") + name + " must lie in [0,1]");
}

}  // namespace

std::span<const char* const> top20_countries() { return {kTop20, 20}; }

void CoupledGenParams::validate() const {
  if (n_pairs < 1) throw DataError("synth: n_pairs must be >= 1");
  check_prob(p_patent, "p_patent");
  check_prob(q_convert, "q_convert");
  check_prob(p_noise_share, "p_noise_share");
  if (d_delay < 0) throw DataError("synth: d_delay must be >= 0");
  if (n_countries < 1) throw DataError("synth: n_countries must be >= 1");
  if (years.length() < 1 || years.length() > 32) throw DataError("synth: window must span 1..32 years");
}

CoupledData gen_coupled(const CoupledGenParams& params) {
  params.validate();
  CoupledData data;
  data.table = std::make_shared<FirmTable>();
  data.truth.d_delay = params.d_delay;

  int window = params.years.length();
  uint64_t pair_key = rng::mix64(params.seed, rng::kDomainGenPair);
  uint64_t node_key = rng::mix64(params.seed, rng::kDomainGenNode);

  for (uint32_t pair = 0; pair < params.n_pairs; ++pair) {
    uint32_t a = data.table->intern("F" + std::to_string(2 * pair));
    uint32_t b = data.table->intern("F" + std::to_string(2 * pair + 1));
    for (uint32_t node : {a, b}) {
      rng::Stream cs(node_key, node);
      int idx = static_cast<int>(cs.next_below(static_cast<uint32_t>(params.n_countries)));
      data.table->set_country(node, country_code(idx));
    }

    rng::Stream stream(pair_key, pair);
    // Draw order per pair: W patent Bernoullis, one conversion draw per
    // event, W noise Bernoullis. The stream is private to the pair, so
    // generation parallelizes without changing output.
    int first_share_year = window + 1;  // relative, > window means none
    std::vector<uint8_t> patent_years(window, 0);
    bool converted = false;
    for (int t = 0; t < window; ++t) {
      if (stream.next_u01() < params.p_patent) {
        patent_years[t] = 1;
        if (stream.next_u01() < params.q_convert) {
          int start = t + params.d_delay;
          if (start < window) {
            converted = true;
            first_share_year = std::min(first_share_year, start);
          }
        }
      }
    }
    std::vector<uint8_t> share_years(window, 0);
    for (int t = first_share_year; t < window; ++t) share_years[t] = 1;
    for (int t = 0; t < window; ++t) {
      if (stream.next_u01() < params.p_noise_share) share_years[t] = 1;
    }

    for (int t = 0; t < window; ++t) {
      int year = params.years.start + t;
      if (patent_years[t])
        data.patent_records.push_back({std::min(a, b), std::max(a, b),
                                       static_cast<int32_t>(year), EdgeKind::Patent});
      if (share_years[t])
        data.share_records.push_back({a, b, static_cast<int32_t>(year), EdgeKind::Share});
    }
    if (converted) data.truth.converted_pairs.push_back(pair);
  }
  return data;
}

void ShareGenParams::validate() const {
  if (n_nodes < 2) throw DataError("synth: n_nodes must be >= 2");
  check_prob(component_mix, "component_mix");
  check_prob(country_assortativity, "country_assortativity");
  if (attachment_exponent < 0.0 || attachment_exponent > 3.0)
    throw DataError("synth: attachment_exponent must lie in [0,3]");
  if (edges_per_node < 1) throw DataError("synth: edges_per_node must be >= 1");
  if (n_countries < 1) throw DataError("synth: n_countries must be >= 1");
}

Network gen_shareholding(const ShareGenParams& params) {
  params.validate();
  uint32_t n = params.n_nodes;
  uint32_t n_dyad = static_cast<uint32_t>(params.component_mix * n);
  n_dyad -= n_dyad % 2;

  std::vector<std::pair<uint32_t, uint32_t>> arcs;
  std::vector<std::string> keys(n);
  std::vector<std::string> countries(n);
  for (uint32_t v = 0; v < n; ++v) keys[v] = "N" + std::to_string(v);

  uint64_t node_key = rng::mix64(params.seed, rng::kDomainGenNode);
  auto draw_country = [&](uint32_t v) {
    rng::Stream cs(node_key, v);
    int idx = static_cast<int>(cs.next_below(static_cast<uint32_t>(params.n_countries)));
    return country_code(idx);
  };

  // Isolated investee -> shareholder dyads.
  for (uint32_t v = 0; v + 1 < n_dyad; v += 2) {
    arcs.emplace_back(v, v + 1);
    countries[v] = draw_country(v);
    rng::Stream as(rng::mix64(params.seed, 0x61736f72), v);  // assortativity draws
    countries[v + 1] =
        as.next_u01() < params.country_assortativity ? countries[v] : draw_country(v + 1);
  }

  // Growth region: each arriving node sends edges_per_node arcs to targets
  // weighted by (in_degree + 1)^exponent, realized with rejection against the
  // linear-preferential proposal list.
  std::vector<uint32_t> pref;  // node repeated (in_degree + 1) times
  std::vector<uint32_t> in_deg(n, 0);
  uint32_t first_growth = n_dyad;
  double exponent = params.attachment_exponent;
  uint32_t max_in = 0;
  for (uint32_t v = first_growth; v < n; ++v) {
    countries[v] = draw_country(v);
    rng::Stream stream(rng::mix64(params.seed, rng::kDomainGenPair), v);
    if (v > first_growth) {
      uint32_t added = 0;
      uint32_t attempts = 0;
      uint32_t want = std::min<uint32_t>(static_cast<uint32_t>(params.edges_per_node), v - first_growth);
      uint32_t max_attempts = 64u * static_cast<uint32_t>(params.edges_per_node) + 64u;
      std::vector<uint32_t> picked;
      while (added < want && attempts < max_attempts) {
        ++attempts;
        uint32_t cand;
        if (exponent >= 1.0) {
          cand = pref[stream.next_below(static_cast<uint32_t>(pref.size()))];
          if (exponent > 1.0) {
            double accept = std::pow(static_cast<double>(in_deg[cand] + 1) /
                                         static_cast<double>(max_in + 1),
                                     exponent - 1.0);
            if (stream.next_u01() >= accept) continue;
          }
        } else {
          cand = first_growth + stream.next_below(v - first_growth);
          double accept = std::pow(static_cast<double>(in_deg[cand] + 1) /
                                       static_cast<double>(max_in + 1),
                                   exponent);
          if (stream.next_u01() >= accept) continue;
        }
        if (cand == v || std::find(picked.begin(), picked.end(), cand) != picked.end()) continue;
        picked.push_back(cand);
        arcs.emplace_back(v, cand);
        ++added;
      }
      for (uint32_t cand : picked) {
        ++in_deg[cand];
        max_in = std::max(max_in, in_deg[cand]);
        pref.push_back(cand);
      }
      if (!picked.empty() && params.country_assortativity > 0.0) {
        if (stream.next_u01() < params.country_assortativity)
          countries[v] = countries[picked.front()];
      }
    }
    pref.push_back(v);
  }

  return Network::from_arcs(n, arcs, /*directed=*/true, Multiplicity::Simple, std::move(keys),
                            std::move(countries));
}

}  // namespace firmnet::synth
