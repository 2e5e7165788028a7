#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace firmnet::info {

// Discrete plug-in estimators over binary series, all in bits. Embedding
// conventions:
//   history X_n^(k,tau)   = (x_{n-(k-1)tau}, ..., x_{n-tau}, x_n)
//   next state            = x_{n+1}
//   delayed source        = Y_{n+1-u}^(l,tauY)
// so AIS uses samples n = (k-1)tau .. len-2 and MI at delay u pairs y_t with
// x_{t+u} (sample count len - u).

struct InfoParams {
  int k = 5;      // target embedding length
  int l = 1;      // source embedding length
  int tau_x = 1;  // target sampling interval
  int tau_y = 1;  // source sampling interval
  int u = 0;      // source-target delay
  void validate() const;
};

// Shannon entropy of a count vector; zero counts contribute nothing.
double entropy_bits(std::span<const uint64_t> counts);

// Plug-in mutual information between x delayed by u and y. Symmetric in its
// arguments at u = 0.
double mutual_information_bits(std::span<const uint8_t> x, std::span<const uint8_t> y, int u = 0);

// Plug-in MI between the next state of x and its embedded history.
double active_information_storage_bits(std::span<const uint8_t> x, int k, int tau = 1);

// Contingency counts over the state-transition tuple
// (x_{n+1}, X_n^(k,tauX), Y_{n+1-u}^(l,tauY)), indexed as
// idx = x_next | x_hist << 1 | y_hist << (1+k).
struct JointCounts {
  int k = 1;
  int l = 1;
  uint64_t n_samples = 0;
  std::vector<uint64_t> counts;  // size 2^(1+k+l)

  std::vector<uint64_t> marginal_x_hist() const;
  std::vector<uint64_t> marginal_next_x_hist() const;
  std::vector<uint64_t> marginal_x_hist_y_hist() const;
};

JointCounts embed_joint_counts(std::span<const uint8_t> source, std::span<const uint8_t> target,
                               const InfoParams& params);

// Transfer entropy as conditional MI I(Y_hist; X_next | X_hist).
double transfer_entropy_bits(std::span<const uint8_t> source, std::span<const uint8_t> target,
                             const InfoParams& params);

// The algebraically equivalent entropy-difference route
// H(X_next | X_hist) - H(X_next | X_hist, Y_hist), kept as an independent
// computation path for verification.
double transfer_entropy_entropy_form_bits(std::span<const uint8_t> source,
                                          std::span<const uint8_t> target,
                                          const InfoParams& params);

// H(X_{n+1} | X_n^(k,tau)) over the same sample range AIS uses. Zero means
// the target's own history already determines its next state, which bounds
// any transfer entropy into it at zero.
double conditional_next_entropy_bits(std::span<const uint8_t> x, int k, int tau = 1);

int mi_sample_count(size_t len_x, size_t len_y, int u);

}  // namespace firmnet::info
