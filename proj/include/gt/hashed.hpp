#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "gt/core/hash_fn.hpp"
#include "gt/core/oracle.hpp"
#include "gt/core/rng.hpp"

namespace gt {

/// r = smallest prime > max(m, max_id); a3, a2, a1 uniform in [1, r-1], b
/// uniform in [0, r-1].
HashFn make_hash(std::uint32_t m, std::uint64_t max_id, Rng& rng);

struct HashedRound {
  std::uint32_t epoch = 0;
  std::uint32_t m = 0;
  std::uint64_t d_remaining = 0;
  std::uint64_t tests = 0;
  std::vector<ItemId> identified;
  /// Buckets whose items stay active: the impure ones, plus any left untested
  /// when the test budget ran out.
  std::vector<std::uint32_t> survivors;
  bool truncated = false;
};

/// One round over the items alive in `epoch`: m = max(2, 2 d_remaining)
/// buckets under a fresh hash, one test per bucket. Pure and tainted buckets
/// are dropped; the round's closing broadcast keeps only survivor buckets.
/// Stops early once `budget` tests have been spent.
HashedRound hashed_round(Oracle& oracle, std::uint64_t d_remaining, std::uint32_t epoch, Rng& rng,
                         std::uint64_t budget = std::numeric_limits<std::uint64_t>::max());

struct HashedParams {
  std::uint32_t round_cap = 64;
  /// Unknown-d attempts stop after cap_constant * assumed d tests.
  double cap_constant = 8.0;

  void validate() const;
};

struct HashedResult {
  std::vector<ItemId> defectives;
  std::vector<HashedRound> rounds;
  std::uint32_t attempts = 0;
  std::uint64_t assumed_d = 0;  // last assumed d (unknown-d runs)
};

/// Known d. d = 0 costs nothing. Throws ContractViolation past round_cap.
HashedResult run_hashed(Oracle& oracle, std::uint64_t d, Rng& rng, const HashedParams& params = {});

/// Unknown d: attempts with assumed d = 2, 4, 8, ..., each capped at
/// cap_constant * d tests; items identified or cleared stay out.
HashedResult run_hashed_unknown_d(Oracle& oracle, Rng& rng, const HashedParams& params = {});

struct UniformityReport {
  std::uint64_t r = 0;
  bool full_range = false;
  std::uint64_t functions = 0;
  double expected = 0;       // 1 / r^4
  double max_deviation = 0;  // max |Pr[image] - 1/r^4| over all r^4 images
};

/// Exhaustive check of (h(x1), .., h(x4)) mod r over every coefficient tuple.
/// full_range draws a3, a2, a1 from [0, r-1] instead of [1, r-1].
UniformityReport hash_uniformity_check(std::uint64_t r, const std::array<std::uint64_t, 4>& keys, bool full_range);

}  // namespace gt
