#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "gt/core/index_space.hpp"
#include "gt/core/oracle.hpp"
#include "gt/core/rng.hpp"

namespace gt {

struct DeferralParams {
  double s = 0.8;
  double p = 0.479;
  /// false gives the non-deferred baseline: impure buckets are searched to
  /// completion with identify() in a single round.
  bool defer = true;
  /// Record one BucketTrace per tested bucket.
  bool trace = false;

  void validate() const;
};

/// Items whose status a search left open, plus what it found.
struct DeferralState {
  std::vector<ItemId> identified;
  std::vector<Interval> deferred;  // positions in the current space
};

/// Search a bucket known impure: test A; pure -> recurse on B untested;
/// tainted -> test B and recurse only if impure; impure -> recurse on A and
/// defer B.
void bucket_search(Oracle& oracle, const IndexSpace& space, Interval bucket, double p, DeferralState& state);

struct BucketTrace {
  std::uint32_t round = 0;
  std::uint32_t epoch = 0;
  std::uint64_t seed = 0;
  std::uint64_t domain = 0;
  Interval positions;
  TestOutcome outcome = TestOutcome::pure();
  std::uint64_t search_tests = 0;
  std::uint64_t identified = 0;
  std::vector<Interval> deferred;
};

struct RoundTrace {
  std::uint32_t round = 0;
  std::uint64_t d_hat = 0;
  std::uint64_t items = 0;
  std::uint64_t buckets = 0;
  std::uint64_t bucket_tests = 0;
  std::uint64_t search_tests = 0;
  std::uint64_t identified = 0;
  std::uint64_t deferred_items = 0;
};

struct DeferralResult {
  std::vector<ItemId> defectives;
  std::vector<RoundTrace> rounds;
  std::vector<BucketTrace> buckets;
};

/// Deferral with the defective count d known exactly. Round r spreads the
/// remaining items into bucket_count_for(s, d - identified) buckets; stops once
/// every defective is identified.
DeferralResult run_deferral(Oracle& oracle, std::uint64_t d, const DeferralParams& params, Rng& rng);

/// Deferral driven by an estimate. The first round uses d_hat; each later
/// round uses max(1, round(previous estimate - identified in that round)).
/// Stops when nothing was deferred.
DeferralResult run_deferral_estimated(Oracle& oracle, double d_hat, const DeferralParams& params, Rng& rng);

// ---- analytic tables ----------------------------------------------------

/// Poisson limit of the probability that a bucket holds k defectives:
/// 1 / (k! s^k e^(1/s)).
double bucket_occupancy(std::uint64_t k, double s);

struct DeferralTables {
  double p = 0;
  std::array<double, 8> e{};  // e[2..7]; e[0] = e[1] = 0
  std::array<double, 7> d{};  // d[3..6]; d[0..2] = 0
};

/// Closed forms for the expected in-bucket tests E_2..E_7 and expected deferred
/// defectives D_3..D_6.
DeferralTables deferral_tables(double p);

struct TotalEstimate {
  double per_defective = 0;
  /// Bucket probability mass with more than seven defectives, left out of the
  /// sums.
  double truncated_mass = 0;
};

/// Expected tests per defective: s (1 + sum P(k) E_k) / (1 - s sum P(k) D_k)
/// over k <= 7, with D_7 taken at its bound 5.
TotalEstimate expected_total_estimate(double s, double p);

}  // namespace gt
