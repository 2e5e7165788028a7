#pragma once

#include <array>
#include <cstdint>

// Counter-based random number generation (Philox4x32-10).
// Every draw is a pure function of (key, counter), so simulations can hand
// out statistically independent streams keyed by (seed, node, step) or
// (seed, pair) and stay bit-identical regardless of scheduling.
namespace firmnet::rng {

namespace detail {
constexpr uint32_t kPhiloxW32A = 0x9E3779B9u;
constexpr uint32_t kPhiloxW32B = 0xBB67AE85u;
constexpr uint32_t kPhiloxM4x32A = 0xD2511F53u;
constexpr uint32_t kPhiloxM4x32B = 0xCD9E8D57u;

inline void mul_hilo(uint32_t a, uint32_t b, uint32_t& lo, uint32_t& hi) {
  uint64_t p = static_cast<uint64_t>(a) * b;
  lo = static_cast<uint32_t>(p);
  hi = static_cast<uint32_t>(p >> 32);
}
}  // namespace detail

using Block = std::array<uint32_t, 4>;

// One 128-bit Philox4x32-10 block for key (k0,k1) and counter (c0..c3).
inline Block philox4x32(uint64_t key, uint64_t counter_hi, uint64_t counter_lo) {
  uint32_t c[4] = {static_cast<uint32_t>(counter_lo), static_cast<uint32_t>(counter_lo >> 32),
                   static_cast<uint32_t>(counter_hi), static_cast<uint32_t>(counter_hi >> 32)};
  uint32_t k0 = static_cast<uint32_t>(key);
  uint32_t k1 = static_cast<uint32_t>(key >> 32);
  for (int round = 0; round < 10; ++round) {
    uint32_t lo0, hi0, lo1, hi1;
    detail::mul_hilo(detail::kPhiloxM4x32A, c[0], lo0, hi0);
    detail::mul_hilo(detail::kPhiloxM4x32B, c[2], lo1, hi1);
    uint32_t n0 = hi1 ^ c[1] ^ k0;
    uint32_t n1 = lo1;
    uint32_t n2 = hi0 ^ c[3] ^ k1;
    uint32_t n3 = lo0;
    c[0] = n0;
    c[1] = n1;
    c[2] = n2;
    c[3] = n3;
    k0 += detail::kPhiloxW32A;
    k1 += detail::kPhiloxW32B;
  }
  return {c[0], c[1], c[2], c[3]};
}

// Map a 32-bit word to (0,1); never returns 0 or 1 exactly.
inline double u01(uint32_t w) { return (static_cast<double>(w) + 0.5) * 0x1p-32; }

// Derive a sub-seed from (seed, stream salt). Used for per-country,
// per-replicate and per-edge streams.
inline uint64_t mix64(uint64_t a, uint64_t b) {
  Block blk = philox4x32(a, 0x6d69783634ull, b);  // "mix64" salt
  return (static_cast<uint64_t>(blk[1]) << 32) | blk[0];
}

// Sequential stream view over the counter space of one (key, stream_id).
class Stream {
 public:
  Stream(uint64_t key, uint64_t stream_id) : key_(key), hi_(stream_id) {}

  uint32_t next_u32() {
    if (idx_ == 4) {
      cur_ = philox4x32(key_, hi_, lo_++);
      idx_ = 0;
    }
    return cur_[idx_++];
  }

  uint64_t next_u64() {
    uint64_t lo = next_u32();
    uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }

  double next_u01() { return u01(next_u32()); }

  // Unbiased-enough bounded draw (Lemire multiply-shift on 64 bits).
  uint32_t next_below(uint32_t bound) {
    return static_cast<uint32_t>((static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

 private:
  uint64_t key_;
  uint64_t hi_;
  uint64_t lo_ = 0;
  Block cur_{};
  int idx_ = 4;
};

// Domain tags keep unrelated draws on disjoint counters.
enum Domain : uint64_t {
  kDomainShock = 1,
  kDomainStep = 2,
  kDomainSurrogate = 3,
  kDomainGenPair = 4,
  kDomainGenNode = 5,
  kDomainSweep = 6,
  kDomainCountry = 7,
};

}  // namespace firmnet::rng
