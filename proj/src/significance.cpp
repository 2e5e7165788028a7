#include "firmnet/significance.hpp"

#include <algorithm>
#include <cmath>

#include "firmnet/errors.hpp"
#include "firmnet/rng.hpp"

namespace firmnet::info {

double chi_square_upper_tail_even_df(uint64_t half_df, double chi2) {
  if (half_df == 0) throw DataError("chi_square_upper_tail_even_df: df must be positive");
  if (chi2 <= 0) return 1.0;
  // Q(n, s) = e^-s * sum_{j<n} s^j / j!  with s = chi2 / 2.
  // Accumulate log-terms and log-sum-exp against the running maximum.
  double s = chi2 / 2.0;
  double log_s = std::log(s);
  double log_term = 0.0;  // j = 0 term: -lgamma(1) = 0
  double max_log = log_term;
  std::vector<double> logs;
  logs.reserve(half_df);
  logs.push_back(log_term);
  for (uint64_t j = 1; j < half_df; ++j) {
    log_term += log_s - std::log(static_cast<double>(j));
    logs.push_back(log_term);
    max_log = std::max(max_log, log_term);
  }
  double acc = 0.0;
  for (double lt : logs) acc += std::exp(lt - max_log);
  double log_q = -s + max_log + std::log(acc);
  if (log_q >= 0) return 1.0;
  return std::exp(log_q);
}

FisherResult fisher_combine(std::span<const double> p_values, double p_floor) {
  if (p_values.empty()) throw DataError("fisher_combine: empty p-value list");
  FisherResult res;
  double sum_neg_log = 0.0;
  for (double p : p_values) {
    if (p < 0.0 || p > 1.0) throw DataError("fisher_combine: p-values must lie in [0,1]");
    if (p < p_floor) {
      p = p_floor;
      ++res.clamped;
    }
    sum_neg_log += -std::log(p);
  }
  res.p = chi_square_upper_tail_even_df(p_values.size(), 2.0 * sum_neg_log);
  return res;
}

double surrogate_p_value(const MeasureFn& measure, std::span<const uint8_t> x,
                         std::span<const uint8_t> y, int n_surrogates, uint64_t seed) {
  if (n_surrogates < 1) throw DataError("surrogate_p_value: need at least 1 surrogate");
  double observed = measure(x, y);
  std::vector<uint8_t> perm(y.begin(), y.end());
  uint64_t ge = 0;
  for (int j = 0; j < n_surrogates; ++j) {
    rng::Stream stream(seed, (uint64_t(rng::kDomainSurrogate) << 32) | uint64_t(j));
    std::copy(y.begin(), y.end(), perm.begin());
    for (size_t i = perm.size(); i > 1; --i) {
      size_t swap_with = stream.next_below(static_cast<uint32_t>(i));
      std::swap(perm[i - 1], perm[swap_with]);
    }
    if (measure(x, perm) >= observed - 1e-12) ++ge;
  }
  return static_cast<double>(1 + ge) / static_cast<double>(1 + n_surrogates);
}

}  // namespace firmnet::info
