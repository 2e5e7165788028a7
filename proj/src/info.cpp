#include "firmnet/info.hpp"

#include <cmath>

#include "firmnet/errors.hpp"

namespace firmnet::info {

namespace {

void check_binary(std::span<const uint8_t> s, const char* name) {
  for (uint8_t v : s) {
    if (v > 1) throw DataError(std::string(name) + ": series values must be 0 or 1");
  }
}

double clamp0(double v) { return v > 0.0 ? v : 0.0; }

// Packs (x_{n-(k-1)tau}, ..., x_n) into k bits, oldest value highest.
inline uint32_t embed_at(std::span<const uint8_t> x, long n, int k, int tau) {
  uint32_t h = 0;
  for (int j = k - 1; j >= 0; --j) h = (h << 1) | x[n - static_cast<long>(j) * tau];
  return h;
}

}  // namespace

void InfoParams::validate() const {
  if (k < 1 || l < 1 || tau_x < 1 || tau_y < 1 || u < 0)
    throw DataError("info params: require k>=1, l>=1, tau_x>=1, tau_y>=1, u>=0");
  if (k + l + 1 > 26) throw DataError("info params: joint state space too large (k + l > 25)");
}

double entropy_bits(std::span<const uint64_t> counts) {
  uint64_t total = 0;
  for (uint64_t c : counts) total += c;
  if (total == 0) throw DataError("entropy: empty count vector");
  double h = 0.0;
  double dt = static_cast<double>(total);
  for (uint64_t c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / dt;
    h -= p * std::log2(p);
  }
  return clamp0(h);
}

int mi_sample_count(size_t len_x, size_t len_y, int u) {
  long nx = static_cast<long>(len_x) - u;
  long ny = static_cast<long>(len_y);
  return static_cast<int>(std::max(0L, std::min(nx, ny)));
}

double mutual_information_bits(std::span<const uint8_t> x, std::span<const uint8_t> y, int u) {
  if (u < 0) throw DataError("mutual_information: delay must be >= 0");
  check_binary(x, "mutual_information");
  check_binary(y, "mutual_information");
  int n = mi_sample_count(x.size(), y.size(), u);
  if (n < 2) throw InsufficientData("mutual_information: need at least 2 aligned samples", n);

  uint64_t joint[4] = {0, 0, 0, 0};
  for (int t = 0; t < n; ++t) ++joint[(x[t + u] << 1) | y[t]];
  uint64_t mx[2] = {joint[0] + joint[1], joint[2] + joint[3]};
  uint64_t my[2] = {joint[0] + joint[2], joint[1] + joint[3]};
  double hx = entropy_bits(mx);
  double hy = entropy_bits(my);
  double hxy = entropy_bits(joint);
  return clamp0(hx + hy - hxy);
}

double conditional_next_entropy_bits(std::span<const uint8_t> x, int k, int tau) {
  if (k < 1 || tau < 1 || k > 25) throw DataError("conditional_next_entropy: bad embedding");
  check_binary(x, "conditional_next_entropy");
  long first = static_cast<long>(k - 1) * tau;
  long samples = static_cast<long>(x.size()) - 1 - first;
  if (samples < 1)
    throw InsufficientData("conditional_next_entropy: series too short for embedding", samples);
  size_t hist_states = size_t{1} << k;
  std::vector<uint64_t> joint(hist_states * 2, 0);
  std::vector<uint64_t> hist(hist_states, 0);
  for (long n = first; n + 1 < static_cast<long>(x.size()); ++n) {
    uint32_t h = embed_at(x, n, k, tau);
    ++joint[(h << 1) | x[n + 1]];
    ++hist[h];
  }
  return clamp0(entropy_bits(joint) - entropy_bits(hist));
}

double active_information_storage_bits(std::span<const uint8_t> x, int k, int tau) {
  if (k < 1 || tau < 1) throw DataError("active_information_storage: require k>=1, tau>=1");
  if (k > 25) throw DataError("active_information_storage: k too large");
  check_binary(x, "active_information_storage");
  long first = static_cast<long>(k - 1) * tau;
  long samples = static_cast<long>(x.size()) - 1 - first;
  if (samples < 1)
    throw InsufficientData("active_information_storage: series too short for embedding", samples);

  size_t hist_states = size_t{1} << k;
  std::vector<uint64_t> joint(hist_states * 2, 0);
  std::vector<uint64_t> hist(hist_states, 0);
  uint64_t next[2] = {0, 0};
  for (long n = first; n + 1 < static_cast<long>(x.size()); ++n) {
    uint32_t h = embed_at(x, n, k, tau);
    uint8_t nx = x[n + 1];
    ++joint[(h << 1) | nx];
    ++hist[h];
    ++next[nx];
  }
  return clamp0(entropy_bits(hist) + entropy_bits(next) - entropy_bits(joint));
}

JointCounts embed_joint_counts(std::span<const uint8_t> source, std::span<const uint8_t> target,
                               const InfoParams& params) {
  params.validate();
  check_binary(source, "transfer_entropy");
  check_binary(target, "transfer_entropy");
  JointCounts jc;
  jc.k = params.k;
  jc.l = params.l;
  jc.counts.assign(size_t{1} << (1 + params.k + params.l), 0);

  long first_target = static_cast<long>(params.k - 1) * params.tau_x;
  long src_hist_span = static_cast<long>(params.l - 1) * params.tau_y;
  for (long n = first_target; n + 1 < static_cast<long>(target.size()); ++n) {
    long y_end = n + 1 - params.u;
    if (y_end - src_hist_span < 0 || y_end >= static_cast<long>(source.size())) continue;
    uint32_t xh = embed_at(target, n, params.k, params.tau_x);
    uint32_t yh = embed_at(source, y_end, params.l, params.tau_y);
    uint8_t xn = target[n + 1];
    ++jc.counts[xn | (xh << 1) | (yh << (1 + params.k))];
    ++jc.n_samples;
  }
  if (jc.n_samples < 1)
    throw InsufficientData("transfer_entropy: series too short for joint embedding",
                           static_cast<long>(jc.n_samples));
  return jc;
}

std::vector<uint64_t> JointCounts::marginal_x_hist() const {
  std::vector<uint64_t> out(size_t{1} << k, 0);
  for (size_t idx = 0; idx < counts.size(); ++idx) out[(idx >> 1) & ((1u << k) - 1)] += counts[idx];
  return out;
}

std::vector<uint64_t> JointCounts::marginal_next_x_hist() const {
  std::vector<uint64_t> out(size_t{1} << (1 + k), 0);
  for (size_t idx = 0; idx < counts.size(); ++idx) out[idx & ((1u << (1 + k)) - 1)] += counts[idx];
  return out;
}

std::vector<uint64_t> JointCounts::marginal_x_hist_y_hist() const {
  std::vector<uint64_t> out(size_t{1} << (k + l), 0);
  for (size_t idx = 0; idx < counts.size(); ++idx) out[idx >> 1] += counts[idx];
  return out;
}

double transfer_entropy_bits(std::span<const uint8_t> source, std::span<const uint8_t> target,
                             const InfoParams& params) {
  JointCounts jc = embed_joint_counts(source, target, params);
  auto xh = jc.marginal_x_hist();
  auto xnxh = jc.marginal_next_x_hist();
  auto xhyh = jc.marginal_x_hist_y_hist();

  // sum p(q) log [ p(x_next | x_hist, y_hist) / p(x_next | x_hist) ]
  double v = 0.0;
  double n = static_cast<double>(jc.n_samples);
  uint32_t k_mask = (1u << jc.k) - 1;
  for (size_t idx = 0; idx < jc.counts.size(); ++idx) {
    uint64_t c = jc.counts[idx];
    if (c == 0) continue;
    uint32_t xn = idx & 1u;
    uint32_t h = (static_cast<uint32_t>(idx) >> 1) & k_mask;
    uint32_t hy = static_cast<uint32_t>(idx) >> 1;
    double p = static_cast<double>(c) / n;
    double cond_full = static_cast<double>(c) / static_cast<double>(xhyh[hy]);
    double cond_hist = static_cast<double>(xnxh[(h << 1) | xn]) / static_cast<double>(xh[h]);
    v += p * std::log2(cond_full / cond_hist);
  }
  return clamp0(v);
}

double transfer_entropy_entropy_form_bits(std::span<const uint8_t> source,
                                          std::span<const uint8_t> target,
                                          const InfoParams& params) {
  JointCounts jc = embed_joint_counts(source, target, params);
  // H(X+|Xk) - H(X+|Xk,Yl) from four joint entropies.
  double h_xh = entropy_bits(jc.marginal_x_hist());
  double h_xn_xh = entropy_bits(jc.marginal_next_x_hist());
  double h_xh_yh = entropy_bits(jc.marginal_x_hist_y_hist());
  double h_full = entropy_bits(jc.counts);
  return clamp0((h_xn_xh - h_xh) - (h_full - h_xh_yh));
}

}  // namespace firmnet::info
