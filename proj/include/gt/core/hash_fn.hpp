#pragma once

#include <cstdint>

namespace gt {

/// h(x) = ((a3 x^3 + a2 x^2 + a1 x + b) mod r) mod m.
struct HashFn {
  std::uint64_t a3 = 1;
  std::uint64_t a2 = 0;
  std::uint64_t a1 = 0;
  std::uint64_t b = 0;
  std::uint64_t r = 2;  // prime
  std::uint32_t m = 1;  // bucket count

  /// Polynomial value mod r, before the final reduction mod m.
  std::uint64_t residue(std::uint64_t x) const;
  std::uint64_t operator()(std::uint64_t x) const { return residue(x) % m; }

  friend bool operator==(const HashFn&, const HashFn&) = default;
};

bool is_prime(std::uint64_t v);
/// Smallest prime strictly greater than v.
std::uint64_t next_prime_above(std::uint64_t v);

}  // namespace gt
