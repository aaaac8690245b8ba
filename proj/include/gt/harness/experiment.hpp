#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gt/core/configuration.hpp"
#include "gt/core/rng.hpp"
#include "gt/core/types.hpp"

namespace gt {

/// Algorithms the harness can run. "halfway" is Identify at p = 1/2 without
/// the pure-sibling skip; "gl-baseline" is spreading with every impure bucket
/// searched in place (no deferral).
inline constexpr const char* kAlgorithms[] = {
    "binary-tree", "halfway", "deferral", "deferral-unknown", "gl-baseline", "counting", "counting-unknown",
    "hashed",      "hashed-unknown", "anonymous", "estimator", "mac", "sensors"};

struct ExperimentConfig {
  std::string algorithm = "deferral";
  std::uint64_t n = std::uint64_t{1} << 20;
  std::uint64_t d = 100;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::optional<double> p;  // split fraction; algorithm default when unset
  std::optional<double> s;  // spread factor; algorithm default when unset
  unsigned a = 4;
  unsigned c = 8;
  double cap = 8.0;                // hashed unknown-d budget constant
  std::optional<OracleMode> mode;  // oracle mode; algorithm default when unset
  std::string protocol = "deferral";  // mac
  std::string aggregate = "idsum";    // sensors
  std::string sensor_algorithm = "deferral";
  bool d_known = true;  // mac, sensors
  unsigned threads = 1;
  std::string calibration_file;  // extra (a, c, f) records

  /// Throws InvalidArgument naming the offending field.
  void validate() const;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
/// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json& j, ExperimentConfig& c);

struct TrialRecord {
  std::uint64_t tests = 0;
  bool exact = false;
  std::uint64_t rounds = 0;
  std::uint64_t messages = 0;
  std::optional<double> estimate;  // estimator output, when one ran
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> records;  // indexed by trial

  double mean_tests = 0;
  double stderr_tests = 0;
  std::uint64_t p50 = 0, p90 = 0, p99 = 0, max = 0;
  double mean_per_d = 0;
  std::optional<double> analytic;
  std::string analytic_label;
  double info_lower_bound = 0;
  std::optional<double> estimator_factor2_rate;
  std::optional<double> throughput;
  double mean_rounds = 0;
  double mean_messages = 0;
  std::uint64_t failures = 0;
};

/// Runs config.trials independent trials. Trial t draws its configuration and
/// algorithm randomness from substreams of (seed, t), so results do not depend
/// on the thread count and two configs with the same seed share configurations.
ExperimentResult run_experiment(const ExperimentConfig& config);

TrialRecord run_trial(const ExperimentConfig& config, std::uint64_t trial);

/// One run of config.algorithm on a given configuration (not mac, which draws
/// its own contenders).
TrialRecord run_on(const ExperimentConfig& config, const Configuration& defectives, Rng& rng);

/// Fills the summary fields from records.
void summarize(ExperimentResult& result);

}  // namespace gt
