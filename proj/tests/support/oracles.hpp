#pragma once

// Test-only reference implementations. They share no code with the library
// beyond the expression membership primitive.

#include <cstdint>
#include <vector>

#include "gt/core/configuration.hpp"
#include "gt/core/oracle.hpp"

namespace gt::testing {

/// Oracle materializing every item's state and scanning all n items per test.
class NaiveOracle final : public Oracle {
 public:
  NaiveOracle(Configuration config, OracleMode mode);
  std::uint64_t population() const override { return config_.population(); }
  void advance_epoch(const EpochAdvance& advance) override;
  const std::vector<ItemState>& states() const { return states_; }

 protected:
  Intersection intersect(const TestExpression& expr) override;

 private:
  Configuration config_;
  std::vector<ItemState> states_;
};

/// Identify's expected tests by the plain recurrence, binomial weights built
/// multiplicatively in long double.
std::vector<long double> identify_expectation(long double p, unsigned d_max);

/// Expected tests and deferred defectives of one deferral bucket search, from
/// the case split over the number x of defectives landing in the first part.
struct BucketExpectation {
  std::vector<long double> e;
  std::vector<long double> deferred;
};
BucketExpectation deferral_expectation(long double p, unsigned d_max);

/// Expected tests of the counting search on a set with t defectives.
std::vector<long double> counting_expectation(long double p, unsigned t_max);

/// Newton iteration on p - (1 - p)^k.
double split_root_newton(int k);

/// Exact P(a bucket holds k of d defectives) with s d buckets.
long double occupancy_exact(unsigned k, unsigned d, long double s);

/// Probability that a uniformly chosen subset of size m of [0, n) holds exactly
/// i of the first d items, by enumerating all subsets (n <= 20).
double subset_hit_probability(unsigned i, unsigned n, unsigned d, unsigned m);

}  // namespace gt::testing
