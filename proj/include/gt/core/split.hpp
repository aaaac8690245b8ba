#pragma once

#include <cstdint>
#include <utility>

#include "gt/core/types.hpp"

namespace gt {

/// Split fractions used throughout: p2, p3, p4 solve p = (1 - p)^k for
/// k = 2, 3, 4; p_star is the asymptotically optimal Identify split.
struct SplitConstants {
  static constexpr double p2 = 0.38196601;
  static constexpr double q2 = 0.61803399;
  static constexpr double p3 = 0.3176722;
  static constexpr double p4 = 0.27550804;
  static constexpr double p_star = 0.41750778;
};

/// A = first clamp(round(p |set|), 1, |set| - 1) indices, B = the rest.
/// Throws DegenerateSplit when |set| < 2 or p is outside (0, 1).
std::pair<Interval, Interval> partition(Interval set, double p);

/// lg C(n, d), via log-gamma.
double info_lower_bound(std::uint64_t n, std::uint64_t d);

/// Root in (0, 1) of p = (1 - p)^k, by bisection to 1e-12.
double solve_split_root(int k);

}  // namespace gt
