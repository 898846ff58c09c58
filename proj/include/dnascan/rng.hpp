#pragma once

#include <cstdint>
#include <stdexcept>

namespace dnascan {

/// Unsigned 128-bit helper type (GCC/Clang builtin).
using u128 = unsigned __int128;

/// 64-bit linear congruential generator with a scrambled output function and
/// O(log n) skip-ahead. The state transition is state' = a*state + c mod 2^64.
/// Each call to next() consumes exactly one state transition, which is what
/// makes positions in the stream addressable: skip(n) from a fresh generator
/// lands exactly on draw index n.
class Rng {
 public:
  static constexpr std::uint64_t kMult = 6364136223846793005ULL;
  static constexpr std::uint64_t kInc = 1442695040888963407ULL;

  explicit Rng(std::uint64_t seed) : state_(kMult * (seed + kInc) + kInc) {}

  /// Output is derived from the state before the transition.
  std::uint64_t next() {
    const std::uint64_t out = mix(state_);
    state_ = kMult * state_ + kInc;
    return out;
  }

  /// Advances the stream by n draws in O(log n). The affine transition
  /// composes as (A1,C1) after (A2,C2) = (A1*A2, A1*C2 + C1), so the n-th
  /// power comes out of a square-and-multiply loop over the bits of n.
  void skip(std::uint64_t n) {
    std::uint64_t acc_mult = 1;
    std::uint64_t acc_plus = 0;
    std::uint64_t cur_mult = kMult;
    std::uint64_t cur_plus = kInc;
    while (n > 0) {
      if (n & 1u) {
        acc_mult *= cur_mult;
        acc_plus = acc_plus * cur_mult + cur_plus;
      }
      cur_plus = (cur_mult + 1) * cur_plus;
      cur_mult *= cur_mult;
      n >>= 1;
    }
    state_ = acc_mult * state_ + acc_plus;
  }

  /// One draw mapped to [0, bound) by the multiply-shift rule
  /// floor(draw * bound / 2^64). Consumes exactly one draw.
  std::uint64_t uniform(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform: bound must be >= 1");
    return static_cast<std::uint64_t>((static_cast<u128>(next()) * bound) >> 64);
  }

  std::uint64_t state() const { return state_; }

  bool operator==(const Rng&) const = default;

  /// xorshift, odd multiply, xor fold. Bijective on 64-bit words.
  static std::uint64_t mix(std::uint64_t s) {
    s ^= s >> 33;
    s *= 0xff51afd7ed558ccdULL;
    s ^= s >> 33;
    return s;
  }

 private:
  std::uint64_t state_;
};

/// Threshold for comparing raw draws against a probability: a draw u falls
/// below probability p iff (u128)u < prob_threshold(p). The threshold is
/// floor(p * 2^64), saturated so p >= 1 accepts every draw.
inline u128 prob_threshold(double p) {
  constexpr double kTwo64 = 18446744073709551616.0;
  if (!(p > 0.0)) return 0;
  if (p >= 1.0) return static_cast<u128>(1) << 64;
  const double scaled = p * kTwo64;
  if (scaled >= kTwo64) return static_cast<u128>(1) << 64;
  return static_cast<u128>(scaled);
}

}  // namespace dnascan
