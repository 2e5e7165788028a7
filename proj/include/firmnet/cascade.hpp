#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "firmnet/network.hpp"

namespace firmnet::cascade {

struct CascadeParams {
  double alpha = 0.2;          // cumulative failure rate, [0,1]
  double gamma = 1.0;          // overall discount rate, >= 0
  int steps = 50;              // T
  double shock_fraction = 0.1; // nodes failed at t = 0
  uint64_t seed = 0;
  void validate() const;
};

struct StepParams {
  double k_step = 0;  // 1 - (1-alpha)^(2/(T+1))
  double r_step = 0;  // e^(gamma/T) - 1
};

StepParams derive_step_params(double alpha, double gamma, int steps);

// Uniform sample of floor(fraction * n) distinct nodes, deterministic in the
// seed. Returned sorted ascending.
std::vector<uint32_t> init_shock(uint32_t n, double fraction, uint64_t seed);

// T x N failure record, bit-packed LSB-first per row.
struct FailureMatrix {
  uint64_t nodes = 0;
  uint64_t steps = 0;
  std::vector<uint8_t> bits;  // steps rows of ceil(nodes/8) bytes

  size_t row_bytes() const { return (nodes + 7) / 8; }
  bool get(uint64_t t, uint64_t i) const {
    return (bits[t * row_bytes() + i / 8] >> (i % 8)) & 1u;
  }
  void write(const std::string& path) const;  // magic FMX1, N and T as u64 LE
  static FailureMatrix read(const std::string& path);
};

struct Metrics {
  double mean_downtime = 0;        // sum(F) / (N*T) net of the realized shock
  double failure_proportion = 0;   // |final row| / N net of the realized shock
  std::vector<uint64_t> per_step_new_failures;
  uint64_t shocked_nodes = 0;
  bool empty_network = false;
};

// Stepwise simulator. Edges run investee -> shareholder, so a node's cascade
// in-degree is its number of investees and newly failed in-neighbors inject
// the per-step influence x = m * k_step / d_in exactly once. Failed nodes are
// never re-sampled. Per-(node, step) draws are counter-based, making runs
// schedule-independent.
class Engine {
 public:
  Engine(const Network& net, const CascadeParams& params,
         std::optional<std::span<const uint32_t>> shock_override = std::nullopt);

  void step();
  int current_step() const { return t_; }
  int total_steps() const { return params_.steps; }
  const std::vector<double>& probabilities() const { return p_; }
  const std::vector<uint8_t>& failed() const { return failed_; }
  const std::vector<uint32_t>& newly_failed() const { return newly_; }
  uint64_t failed_count() const { return failed_count_; }
  uint64_t shocked_count() const { return shocked_; }
  const StepParams& step_params() const { return sp_; }

 private:
  const Network& net_;
  CascadeParams params_;
  StepParams sp_;
  int t_ = 0;
  std::vector<double> p_;
  std::vector<uint8_t> failed_;
  std::vector<uint32_t> newly_;     // c_{t}: failures of the current step
  std::vector<uint32_t> influence_; // m: newly failed investees per node
  std::vector<uint32_t> touched_;
  uint64_t failed_count_ = 0;
  uint64_t shocked_ = 0;
};

struct RunOptions {
  bool keep_failure_matrix = false;
  uint64_t matrix_bit_budget = uint64_t(1) << 33;  // refuse full F above this
  std::optional<std::vector<uint32_t>> shock_override;
};

struct RunResult {
  Metrics metrics;
  std::optional<FailureMatrix> matrix;
  bool matrix_refused = false;
};

RunResult run(const Network& net, const CascadeParams& params, const RunOptions& opts = {});

struct SweepRow {
  double alpha = 0;
  double gamma = 0;
  int replicate = 0;
  uint64_t seed = 0;
  double mean_downtime = 0;
  double failure_proportion = 0;
};

// Independent seeded run per (alpha, gamma, replicate); rows in grid order.
std::vector<SweepRow> sweep(const Network& net, std::span<const double> alphas,
                            std::span<const double> gammas, int steps, int replicates,
                            uint64_t seed, double shock_fraction = 0.1, int threads = 1);

struct CellStats {
  double alpha = 0, gamma = 0;
  double mean_downtime = 0, se_downtime = 0;
  double mean_failure = 0, se_failure = 0;
  int replicates = 0;
};
std::vector<CellStats> sweep_cell_stats(std::span<const SweepRow> rows);

struct CountryRow {
  std::string country;
  uint64_t nodes = 0;
  uint64_t edges = 0;
  double mean_downtime = 0;
  double failure_proportion = 0;
  bool empty = false;
};

// One run per country with a country-derived sub-seed; output sorted by
// mean downtime descending for ranking.
std::vector<CountryRow> country_sweep(const std::map<std::string, Network>& nets,
                                      const CascadeParams& params, int threads = 1);

void write_sweep_csv(const std::string& path, std::span<const SweepRow> rows);
void write_country_csv(const std::string& path, std::span<const CountryRow> rows);

}  // namespace firmnet::cascade
