#include "gt/core/permutation.hpp"

#include <bit>

#include "gt/core/errors.hpp"
#include "gt/core/rng.hpp"

namespace gt {

namespace {
constexpr unsigned kRounds = 6;
}

Permutation::Permutation(std::uint64_t seed, std::uint64_t domain) : seed_(seed), domain_(domain) {
  if (domain_ > (std::uint64_t{1} << 62)) throw InvalidArgument("Permutation: domain too large");
  if (domain_ > 1) {
    const unsigned bits = std::bit_width(domain_ - 1);
    half_bits_ = (bits + 1) / 2;
    if (half_bits_ == 0) half_bits_ = 1;
    half_mask_ = (std::uint64_t{1} << half_bits_) - 1;
  }
}

std::uint64_t Permutation::round_fn(unsigned round, std::uint64_t half) const {
  return prf(seed_ + 0x9e3779b97f4a7c15ULL * (round + 1), half) & half_mask_;
}

std::uint64_t Permutation::encrypt(std::uint64_t x) const {
  std::uint64_t left = x >> half_bits_;
  std::uint64_t right = x & half_mask_;
  for (unsigned r = 0; r < kRounds; ++r) {
    const std::uint64_t next = left ^ round_fn(r, right);
    left = right;
    right = next;
  }
  return (left << half_bits_) | right;
}

std::uint64_t Permutation::decrypt(std::uint64_t y) const {
  std::uint64_t left = y >> half_bits_;
  std::uint64_t right = y & half_mask_;
  for (unsigned r = kRounds; r-- > 0;) {
    const std::uint64_t prev = right ^ round_fn(r, left);
    right = left;
    left = prev;
  }
  return (left << half_bits_) | right;
}

std::uint64_t Permutation::forward(std::uint64_t x) const {
  if (x >= domain_) throw InvalidArgument("Permutation::forward: index outside domain");
  if (domain_ <= 1) return x;
  std::uint64_t y = encrypt(x);
  while (y >= domain_) y = encrypt(y);
  return y;
}

std::uint64_t Permutation::inverse(std::uint64_t y) const {
  if (y >= domain_) throw InvalidArgument("Permutation::inverse: index outside domain");
  if (domain_ <= 1) return y;
  std::uint64_t x = decrypt(y);
  while (x >= domain_) x = decrypt(x);
  return x;
}

}  // namespace gt
