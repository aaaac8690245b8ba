#include "gt/core/split.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gt/core/errors.hpp"

namespace gt {

std::pair<Interval, Interval> partition(Interval set, double p) {
  const std::uint64_t n = set.size();
  if (n < 2) throw DegenerateSplit("partition: set of size " + std::to_string(n) + " cannot be split");
  if (!(p > 0.0 && p < 1.0)) throw DegenerateSplit("partition: p must lie in (0, 1)");
  const auto raw = static_cast<std::int64_t>(std::llround(p * static_cast<double>(n)));
  const auto a = static_cast<std::uint64_t>(std::clamp<std::int64_t>(raw, 1, static_cast<std::int64_t>(n) - 1));
  return {Interval{set.lo, set.lo + a}, Interval{set.lo + a, set.hi}};
}

double info_lower_bound(std::uint64_t n, std::uint64_t d) {
  if (d > n) throw InvalidArgument("d: exceeds n");
  if (d == 0 || d == n) return 0.0;
  const double nn = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  return (std::lgamma(nn + 1) - std::lgamma(dd + 1) - std::lgamma(nn - dd + 1)) / std::log(2.0);
}

double solve_split_root(int k) {
  if (k < 1) throw InvalidArgument("k: must be >= 1");
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (mid - std::pow(1.0 - mid, k) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace gt
