#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gt/core/oracle.hpp"
#include "gt/core/rng.hpp"
#include "gt/deferral.hpp"

namespace gt {

/// Offline fit of the normalization f for one (a, c) pair.
struct CalibrationRecord {
  unsigned a = 0;
  unsigned c = 0;
  double f = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

void to_json(nlohmann::json& j, const CalibrationRecord& r);
void from_json(const nlohmann::json& j, CalibrationRecord& r);

std::vector<CalibrationRecord> load_calibrations(const std::string& path);
void save_calibrations(const std::string& path, const std::vector<CalibrationRecord>& records);

struct EstimatorParams {
  unsigned a = 4;
  unsigned c = 8;
  double f = 4.3;

  /// (a, c) = (4, 8), f = 4.3.
  static EstimatorParams shipped() { return {}; }
  /// Shipped triple, or the record matching (a, c). Throws InvalidArgument when
  /// neither applies.
  static EstimatorParams lookup(unsigned a, unsigned c, const std::vector<CalibrationRecord>& records = {});

  void validate() const;
};

struct DoublingResult {
  std::uint64_t d_hat = 0;  // 2^level
  unsigned level = 0;
  std::uint64_t tests = 0;
};

/// Test PRF subsets with inclusion 2^-i for i = 1, 2, ... until a 0 or 1
/// result. Level cap ceil(lg n) + 5.
DoublingResult doubling_estimate(Oracle& oracle, Rng& rng, std::uint32_t epoch = 0);

struct RefinedResult {
  double d_prime = 0;  // f * 2^(level / a)
  unsigned level = 0;
  std::uint64_t tests = 0;
};

/// Experiments i = j, j+1, ... with j = max(1, a (lg d_hat - 5)); each tests up
/// to c PRF subsets with inclusion 2^(-i/a) and the sequence stops at the
/// first 0 or 1 result. Level cap a * ceil(lg n).
RefinedResult refined_estimate(Oracle& oracle, const DoublingResult& doubling, const EstimatorParams& params,
                               Rng& rng, std::uint32_t epoch = 0);

struct Estimate {
  DoublingResult doubling;
  RefinedResult refined;
  std::uint64_t tests() const { return doubling.tests + refined.tests; }
};

Estimate estimate_defectives(Oracle& oracle, const EstimatorParams& params, Rng& rng, std::uint32_t epoch = 0);

/// Large-n probability that experiment i sees at least one 0/1 result among
/// its c subsets: 1 - (1 - (t + 1) e^-t)^c with t = d / 2^(i/a).
double stop_probability(double d, unsigned i, unsigned a, unsigned c);

struct CalibrationOptions {
  std::uint64_t n = std::uint64_t{1} << 20;
  std::vector<std::uint64_t> d_grid = {16, 32, 64, 128, 256, 512};
  std::uint64_t trials = 2000;  // per grid point
  std::uint64_t seed = 1;
};

/// Monte Carlo fit of f so the geometric mean of d' / d over the grid is 1.
CalibrationRecord calibrate_f(unsigned a, unsigned c, const CalibrationOptions& options);

struct UnknownDResult {
  std::vector<ItemId> defectives;
  std::optional<Estimate> estimate;  // absent when the whole-set test settled it
  std::vector<RoundTrace> rounds;
};

/// Whole-population test; if impure, estimate d and run deferral from d'.
UnknownDResult run_deferral_unknown_d(Oracle& oracle, const EstimatorParams& estimator,
                                      const DeferralParams& deferral, Rng& rng);

}  // namespace gt
