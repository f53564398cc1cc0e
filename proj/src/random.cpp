#include "imaug/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace imaug {

std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t mix64(std::uint64_t x) {
  return splitmix64_next(x);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t source_index,
                          std::uint16_t technique_code, std::uint64_t replicate) {
  std::uint64_t w0 = (source_index << 16) | technique_code;
  std::uint64_t s = mix64(master ^ w0);
  return mix64(s ^ replicate);
}

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : origin_seed_(seed) {
  std::uint64_t sm = seed;
  for (auto& word : state_) {
    word = splitmix64_next(sm);
  }
}

std::uint64_t RandomStream::next_u64() {
  // xoshiro256** step (Blackman & Vigna).
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RandomStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_double();
}

std::uint64_t RandomStream::next_below(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("next_below: bound must be >= 1");
  }
  // Rejection below the largest multiple of n, so the modulo is unbiased.
  const std::uint64_t limit = n * (~std::uint64_t{0} / n);
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

double RandomStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_double();
  const double u2 = next_double();
  // 1 - u1 lies in (0, 1], keeping the log finite.
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace imaug
