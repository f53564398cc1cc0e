#pragma once

#include <array>
#include <cstdint>

namespace imaug {

/// One SplitMix64 step: advances state by the golden gamma and returns the
/// mixed output. Matches the published reference sequence bit for bit
/// (state 0 yields 0xe220a8397b1dcdaf first).
std::uint64_t splitmix64_next(std::uint64_t& state);

/// The SplitMix64 finalizer applied to a single word (one step with state = x).
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent job seed from a master seed and job coordinates.
/// The coordinates are packed into two 64-bit words,
///   w0 = (source_index << 16) | technique_code,  w1 = replicate,
/// which are XOR-mixed into the running value and fed sequentially through
/// the SplitMix64 finalizer. Identical inputs give identical seeds on every
/// platform; distinct job coordinates give distinct streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t source_index,
                          std::uint16_t technique_code, std::uint64_t replicate);

/// Deterministic xoshiro256** stream, the sole randomness source in the
/// library. The 256-bit state is seeded from a 64-bit seed via four
/// SplitMix64 outputs, so equal seeds reproduce equal byte sequences
/// everywhere.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) from the top 53 bits.
  double next_double();

  /// Uniform double in [lo, hi); degenerate lo == hi returns lo exactly.
  double uniform(double lo, double hi);

  /// Unbiased integer in [0, n) by rejection sampling. n must be >= 1.
  std::uint64_t next_below(std::uint64_t n);

  bool bernoulli(double p) { return next_double() < p; }

  /// Standard normal via the Box-Muller transform over this stream.
  /// Draws two uniforms per pair and caches the second variate; the draw
  /// order is part of the reproducibility contract.
  double gaussian();

  std::uint64_t origin_seed() const { return origin_seed_; }

 private:
  std::array<std::uint64_t, 4> state_;
  std::uint64_t origin_seed_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace imaug
