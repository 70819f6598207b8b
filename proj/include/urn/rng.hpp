#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace urn {

/// Deterministic random stream keyed by (seed, stream_index).
///
/// The generator is xoshiro256** whose state is expanded with SplitMix64 from
/// a hash of the key, so every trial of a batch owns a reproducible stream
/// regardless of which worker runs it. All distributions used by the library
/// are implemented here on top of raw 64-bit output (no <random>
/// distributions) so draw sequences are identical across standard libraries.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_index) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return next_u64(); }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer on [0, bound); bound must be positive. Lemire's method.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Exponential with the given rate (mean 1/rate). rate must be positive.
  double exponential(double rate) noexcept;

  bool bernoulli(double q) noexcept { return uniform() < q; }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
  std::uint64_t seed_;
  std::uint64_t stream_index_;
};

/// SplitMix64 finalizer, exposed for deriving sub-seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for an independent family of streams labelled by `tag`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept;

}  // namespace urn
