#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace firmnet::info {

// Upper-tail probability of a chi-square variable with even df = 2 * half_df.
// Exact finite series evaluated in log space, so it stays stable for the
// thousands-of-edges combinations Fisher's method produces.
double chi_square_upper_tail_even_df(uint64_t half_df, double chi2);

struct FisherResult {
  double p = 1.0;
  uint64_t clamped = 0;  // inputs raised to the floor
};

// Fisher's method: chi2 = -2 sum ln p_i against chi-square with 2n df.
// p = 0 inputs are clamped to `p_floor`; an empty list is an error.
FisherResult fisher_combine(std::span<const double> p_values, double p_floor = 1e-12);

using MeasureFn =
    std::function<double(std::span<const uint8_t>, std::span<const uint8_t>)>;

// Permutation test: the source series y is shuffled (marginal counts
// preserved) n_surrogates times and the measure recomputed;
// p = (1 + #{surrogate >= observed}) / (1 + n_surrogates).
// Fully determined by `seed`; the x series is passed through untouched.
double surrogate_p_value(const MeasureFn& measure, std::span<const uint8_t> x,
                         std::span<const uint8_t> y, int n_surrogates, uint64_t seed);

}  // namespace firmnet::info
