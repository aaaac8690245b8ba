#pragma once

#include <cstdint>

namespace gt {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Keyed pseudo-random function on 64-bit inputs.
constexpr std::uint64_t prf(std::uint64_t key, std::uint64_t x) {
  return mix64(key ^ mix64(x ^ 0x6a09e667f3bcc909ULL));
}

/// Counter-based generator: the k-th output is mix64(key + k * golden), which
/// is the SplitMix64 stream started at `key`. Streams are reproducible from
/// (seed, counter) alone and split into independent substreams by key
/// derivation, so trials never share state.
///
/// Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) : key_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    ++counter_;
    return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
  }

  /// Independent stream for (index, purpose tag); does not advance *this.
  Rng substream(std::uint64_t index, std::uint64_t tag) const;

  /// Uniform integer in [0, bound); bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform integer in [lo, hi] inclusive.
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  bool bernoulli(double p) { return uniform() < p; }
  /// Binomial(trials, p) draw. Inversion for small means, BTPE via libstdc++
  /// otherwise; deterministic for a fixed stream.
  std::uint64_t binomial(std::uint64_t trials, double p);

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Purpose tags for substreams.
namespace stream {
inline constexpr std::uint64_t kConfiguration = 1;
inline constexpr std::uint64_t kAlgorithm = 2;
inline constexpr std::uint64_t kTree = 3;
inline constexpr std::uint64_t kEstimator = 4;
}  // namespace stream

}  // namespace gt
