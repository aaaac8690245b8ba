#pragma once

#include <cstdint>

namespace gt {

/// Keyed pseudo-random bijection on [0, domain).
///
/// Balanced six-round Feistel network over the smallest even bit width that
/// covers the domain, with cycle walking to stay inside it. The padded width
/// is at most 4x the domain, so a lookup walks fewer than four cycles on
/// average.
class Permutation {
 public:
  Permutation(std::uint64_t seed, std::uint64_t domain);

  std::uint64_t forward(std::uint64_t x) const;
  std::uint64_t inverse(std::uint64_t y) const;

  std::uint64_t domain() const { return domain_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t encrypt(std::uint64_t x) const;
  std::uint64_t decrypt(std::uint64_t y) const;
  std::uint64_t round_fn(unsigned round, std::uint64_t half) const;

  std::uint64_t seed_;
  std::uint64_t domain_;
  unsigned half_bits_ = 0;
  std::uint64_t half_mask_ = 0;
};

}  // namespace gt
