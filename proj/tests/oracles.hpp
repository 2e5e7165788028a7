#pragma once

// Test-only reference implementations, kept deliberately independent of the
// library code paths: map-based contingency tables evaluated with the direct
// probability formulas, dense-matrix cascade dynamics, and quadrature for the
// chi-square tail. Slow and simple on purpose.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <tuple>
#include <vector>

namespace oracle {

using Series = std::vector<uint8_t>;

// Direct-sum plug-in MI between paired samples.
inline double mi_pairs(const std::vector<std::pair<int, int>>& samples) {
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> mx, my;
  double n = static_cast<double>(samples.size());
  for (auto s : samples) {
    joint[s] += 1;
    mx[s.first] += 1;
    my[s.second] += 1;
  }
  double v = 0;
  for (const auto& [key, c] : joint) {
    double p = c / n;
    v += p * std::log2(p / ((mx[key.first] / n) * (my[key.second] / n)));
  }
  return v;
}

// MI pairing y_t with x_{t+u}.
inline double delayed_mi(const Series& x, const Series& y, int u) {
  std::vector<std::pair<int, int>> samples;
  for (size_t t = 0; t + u < x.size() && t < y.size(); ++t)
    samples.emplace_back(x[t + u], y[t]);
  return mi_pairs(samples);
}

inline std::vector<int> embed(const Series& s, long n, int k, int tau) {
  std::vector<int> h;
  for (int j = k - 1; j >= 0; --j) h.push_back(s[n - static_cast<long>(j) * tau]);
  return h;
}

// AIS as MI between history tuples and next values.
inline double ais(const Series& x, int k, int tau = 1) {
  std::map<std::pair<std::vector<int>, int>, double> joint;
  std::map<std::vector<int>, double> mh;
  std::map<int, double> mn;
  double n = 0;
  for (long t = static_cast<long>(k - 1) * tau; t + 1 < static_cast<long>(x.size()); ++t) {
    auto h = embed(x, t, k, tau);
    joint[{h, x[t + 1]}] += 1;
    mh[h] += 1;
    mn[x[t + 1]] += 1;
    n += 1;
  }
  double v = 0;
  for (const auto& [key, c] : joint) {
    double p = c / n;
    v += p * std::log2(p / ((mh[key.first] / n) * (mn[key.second] / n)));
  }
  return v;
}

// TE as the direct conditional-MI sum over the state-transition tuple.
inline double te(const Series& source, const Series& target, int k, int l, int tau_x, int tau_y,
                 int u) {
  using Tuple = std::tuple<int, std::vector<int>, std::vector<int>>;
  std::map<Tuple, double> joint;
  std::map<std::vector<int>, double> mxh;
  std::map<std::pair<int, std::vector<int>>, double> mxnxh;
  std::map<std::pair<std::vector<int>, std::vector<int>>, double> mxhyh;
  double n = 0;
  for (long t = static_cast<long>(k - 1) * tau_x; t + 1 < static_cast<long>(target.size()); ++t) {
    long ysrc = t + 1 - u;
    if (ysrc - static_cast<long>(l - 1) * tau_y < 0 || ysrc >= static_cast<long>(source.size()))
      continue;
    auto xh = embed(target, t, k, tau_x);
    auto yh = embed(source, ysrc, l, tau_y);
    int xn = target[t + 1];
    joint[{xn, xh, yh}] += 1;
    mxh[xh] += 1;
    mxnxh[{xn, xh}] += 1;
    mxhyh[{xh, yh}] += 1;
    n += 1;
  }
  double v = 0;
  for (const auto& [key, c] : joint) {
    const auto& [xn, xh, yh] = key;
    double cond_full = c / mxhyh[{xh, yh}];
    double cond_hist = mxnxh[{xn, xh}] / mxh[xh];
    v += (c / n) * std::log2(cond_full / cond_hist);
  }
  return v;
}

// Chi-square upper tail via Simpson quadrature of the density.
inline double chi_square_upper_tail(int df, double x0) {
  auto pdf = [df](double x) {
    double k2 = df / 2.0;
    return std::exp((k2 - 1) * std::log(x) - x / 2.0 - std::lgamma(k2) - k2 * std::log(2.0));
  };
  double hi = x0 + 60.0 * std::sqrt(2.0 * df) + 200.0;
  int steps = 200000;
  double h = (hi - x0) / steps;
  double acc = pdf(x0) + pdf(hi);
  for (int i = 1; i < steps; ++i) acc += pdf(x0 + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Straightforward dense reimplementation of the cascade dynamics, following
// the published equations verbatim (o vector, Hadamard product, OR update).
// Uses its own mt19937 randomness, so comparisons against the engine are
// distributional.
struct DenseCascade {
  int n;
  std::vector<std::vector<uint8_t>> adj;  // adj[i][j] = 1 : i invests in j
  explicit DenseCascade(int n_) : n(n_), adj(n_, std::vector<uint8_t>(n_, 0)) {}
  void add_edge(int investee, int shareholder) { adj[investee][shareholder] = 1; }

  // Returns (mean_downtime, failure_proportion) net of the realized shock.
  std::pair<double, double> run(double alpha, double gamma, int T,
                                const std::vector<int>& shock, std::mt19937& rng) const {
    double k = 1.0 - std::pow(1.0 - alpha, 2.0 / (T + 1));
    double r = std::exp(gamma / T) - 1.0;
    std::vector<double> d_in(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d_in[j] += adj[i][j];

    std::vector<double> p(n, 0.0), o(n, 0.0);
    for (int i = 0; i < n; ++i) o[i] = std::max((d_in[i] - k) / k, 0.0);
    std::vector<uint8_t> f(n, 0), c(n, 0);
    for (int v : shock) {
      f[v] = 1;
      c[v] = 1;
    }
    double shocked = 0;
    for (int i = 0; i < n; ++i) shocked += f[i];

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double sum_f = 0;
    for (int t = 1; t <= T; ++t) {
      // x = c_{t-1} A  (Hadamard) 1/(o+1)
      std::vector<double> x(n, 0.0);
      for (int i = 0; i < n; ++i) {
        if (!c[i]) continue;
        for (int j = 0; j < n; ++j) x[j] += adj[i][j];
      }
      for (int j = 0; j < n; ++j) x[j] *= 1.0 / (o[j] + 1.0);
      std::vector<uint8_t> c_next(n, 0);
      for (int j = 0; j < n; ++j) {
        p[j] = x[j] + p[j] * (1.0 - x[j]) / (1.0 + r);
        if (!f[j] && unif(rng) < p[j]) c_next[j] = 1;
      }
      for (int j = 0; j < n; ++j) f[j] = f[j] | c_next[j];
      c = c_next;
      for (int j = 0; j < n; ++j) sum_f += f[j];
    }
    double final_f = 0;
    for (int j = 0; j < n; ++j) final_f += f[j];
    double tau = sum_f / (static_cast<double>(n) * T) - shocked / n;
    double phi = final_f / n - shocked / n;
    return {tau, phi};
  }
};

}  // namespace oracle
