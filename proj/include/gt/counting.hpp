#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gt/core/index_space.hpp"
#include "gt/core/oracle.hpp"
#include "gt/core/rng.hpp"
#include "gt/deferral.hpp"

namespace gt {

struct CountingParams {
  double s = 0.58;
  double p = 0.4715;

  void validate() const;
};

/// Search a set holding exactly t >= 2 defectives: test B1; recurse when
/// t1 >= 2; then skip B2 (t1 = t), test it once (t1 = t - 1), or recurse into
/// it untested with count t - t1. Needs counting identifying results.
void counting_search(Oracle& oracle, const IndexSpace& space, Interval set, std::uint64_t t, double p,
                     std::vector<ItemId>& out);

struct CountingResult {
  std::vector<ItemId> defectives;
  std::uint64_t buckets = 0;
  std::uint64_t bucket_tests = 0;
};

/// One spreading pass into bucket_count_for(s, d_hat) buckets, one counting
/// test per nonempty bucket, counting_search on buckets with count >= 2.
CountingResult run_counting(Oracle& oracle, std::uint64_t d_hat, const CountingParams& params, Rng& rng);

/// With counting results a whole-population test yields d exactly; then
/// run_counting with that d.
CountingResult run_counting_unknown_d(Oracle& oracle, const CountingParams& params, Rng& rng);

/// Closed forms E_2..E_6 of the expected in-set tests (entries 0, 1 are 0).
std::array<double, 7> counting_tables(double p);

/// Expected tests per defective, s (1 + sum_{k<=6} P(k) E_k), with the mass
/// of buckets holding seven or more defectives reported separately.
TotalEstimate counting_total_estimate(double s, double p);

}  // namespace gt
