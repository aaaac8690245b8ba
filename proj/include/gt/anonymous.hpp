#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gt/core/oracle.hpp"

namespace gt {

/// Counters over the Final3 loop, for checking the disambiguation paths.
struct AnTrace {
  std::uint64_t final3_iterations = 0;
  std::uint64_t one_tainted_paths = 0;      // first test tainted
  std::uint64_t one_tainted_max_extra = 0;  // follow-up tests on such a path
  std::uint64_t multi_tainted_paths = 0;    // first test impure
  std::uint64_t multi_tainted_max_extra = 0;
  bool lists_disjoint = true;  // checked after every Final3 iteration
};

/// Deterministic search with anonymous ternary results. Only the 0 / 1 / 2+
/// value of each outcome is used.
std::vector<ItemId> an(Oracle& oracle, AnTrace* trace = nullptr);

/// Split a set with >= 2 defectives at p2 until every defective sits alone in a
/// tainted interval appended to `tainted`.
void reduce(Oracle& oracle, Interval set, std::vector<Interval>& tainted);

/// Two disjoint tainted intervals; shrinks both at p3 per iteration.
std::pair<ItemId, ItemId> final2(Oracle& oracle, Interval a, Interval b);

/// Three or more disjoint tainted intervals; shrinks the three largest
/// non-singletons at p4 per iteration (ties broken by lowest start).
std::vector<ItemId> final3(Oracle& oracle, std::vector<Interval> tainted, AnTrace* trace = nullptr);

/// Leading term of the worst-case test count: 1.8756 lg n for d = 2,
/// (0.3307 + 0.7202 d) lg n for d >= 3.
double anonymous_worst_case_bound(std::uint64_t d, std::uint64_t n);

}  // namespace gt
