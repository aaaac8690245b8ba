#include "gt/core/rng.hpp"

#include <random>

#include "gt/core/errors.hpp"

namespace gt {

namespace {
__extension__ using u128 = unsigned __int128;
}

Rng Rng::substream(std::uint64_t index, std::uint64_t tag) const {
  return Rng(mix64(key_ ^ mix64(index ^ mix64(tag * 0xd1b54a32d192ed03ULL))));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("Rng::below: bound must be positive");
  // Lemire's multiply-shift with rejection.
  std::uint64_t x = (*this)();
  u128 m = static_cast<u128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = (*this)();
      m = static_cast<u128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::uint64_t Rng::between(std::uint64_t lo, std::uint64_t hi) {
  if (hi < lo) throw InvalidArgument("Rng::between: empty range");
  if (lo == 0 && hi == max()) return (*this)();
  return lo + below(hi - lo + 1);
}

double Rng::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::binomial(std::uint64_t trials, double p) {
  if (trials == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  std::binomial_distribution<std::uint64_t> dist(trials, p);
  return dist(*this);
}

}  // namespace gt
