#include "gt/estimation.hpp"

#include <bit>
#include <cmath>
#include <fstream>

#include "gt/core/configuration.hpp"
#include "gt/core/errors.hpp"

namespace gt {

void to_json(nlohmann::json& j, const CalibrationRecord& r) {
  j = nlohmann::json{{"a", r.a}, {"c", r.c}, {"f", r.f}, {"trials", r.trials}, {"seed", r.seed}};
}

void from_json(const nlohmann::json& j, CalibrationRecord& r) {
  j.at("a").get_to(r.a);
  j.at("c").get_to(r.c);
  j.at("f").get_to(r.f);
  j.at("trials").get_to(r.trials);
  j.at("seed").get_to(r.seed);
}

std::vector<CalibrationRecord> load_calibrations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("calibration: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataCorruption("calibration: " + path + ": " + e.what());
  }
  if (j.is_array()) return j.get<std::vector<CalibrationRecord>>();
  return {j.get<CalibrationRecord>()};
}

void save_calibrations(const std::string& path, const std::vector<CalibrationRecord>& records) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("calibration: cannot write " + path);
  const nlohmann::json j = records.size() == 1 ? nlohmann::json(records.front()) : nlohmann::json(records);
  out << j.dump(2) << '\n';
}

void EstimatorParams::validate() const {
  if (a < 1) throw InvalidArgument("a: must be >= 1");
  if (c < 1) throw InvalidArgument("c: must be >= 1");
  if (!(f > 0.0)) throw InvalidArgument("f: must be positive");
}

EstimatorParams EstimatorParams::lookup(unsigned a, unsigned c, const std::vector<CalibrationRecord>& records) {
  for (const auto& r : records) {
    if (r.a == a && r.c == c) {
      EstimatorParams p{a, c, r.f};
      p.validate();
      return p;
    }
  }
  const EstimatorParams shipped = EstimatorParams::shipped();
  if (a == shipped.a && c == shipped.c) return shipped;
  throw InvalidArgument("a, c: no calibration record for (" + std::to_string(a) + ", " + std::to_string(c) +
                        "); run calibrate-f first");
}

namespace {

unsigned ceil_lg(std::uint64_t n) { return n <= 1 ? 0 : static_cast<unsigned>(std::bit_width(n - 1)); }

bool settles(const TestOutcome& t) { return t.value() <= 1; }

}  // namespace

DoublingResult doubling_estimate(Oracle& oracle, Rng& rng, std::uint32_t epoch) {
  const unsigned cap = ceil_lg(oracle.population()) + 5;
  DoublingResult r;
  for (unsigned i = 1; i <= cap; ++i) {
    const TestOutcome t = oracle.test(PrfSubset{rng(), i, 1, epoch});
    ++r.tests;
    if (settles(t)) {
      r.level = i;
      r.d_hat = std::uint64_t{1} << i;
      return r;
    }
  }
  throw EstimationFailure("doubling estimate: no 0/1 result up to level " + std::to_string(cap));
}

RefinedResult refined_estimate(Oracle& oracle, const DoublingResult& doubling, const EstimatorParams& params,
                               Rng& rng, std::uint32_t epoch) {
  params.validate();
  const long start = std::max<long>(1, static_cast<long>(params.a) * (static_cast<long>(doubling.level) - 5));
  const unsigned cap = params.a * std::max(1u, ceil_lg(oracle.population()));
  RefinedResult r;
  for (auto i = static_cast<unsigned>(start); i <= cap; ++i) {
    for (unsigned k = 0; k < params.c; ++k) {
      const TestOutcome t = oracle.test(PrfSubset{rng(), i, params.a, epoch});
      ++r.tests;
      if (settles(t)) {
        r.level = i;
        r.d_prime = params.f * std::exp2(static_cast<double>(i) / params.a);
        return r;
      }
    }
  }
  throw EstimationFailure("refined estimate: no 0/1 result up to level " + std::to_string(cap));
}

Estimate estimate_defectives(Oracle& oracle, const EstimatorParams& params, Rng& rng, std::uint32_t epoch) {
  Estimate e;
  e.doubling = doubling_estimate(oracle, rng, epoch);
  e.refined = refined_estimate(oracle, e.doubling, params, rng, epoch);
  return e;
}

double stop_probability(double d, unsigned i, unsigned a, unsigned c) {
  const double t = d / std::exp2(static_cast<double>(i) / a);
  return 1.0 - std::pow(1.0 - (t + 1.0) * std::exp(-t), static_cast<double>(c));
}

CalibrationRecord calibrate_f(unsigned a, unsigned c, const CalibrationOptions& options) {
  EstimatorParams raw{a, c, 1.0};
  raw.validate();
  if (options.trials == 0 || options.d_grid.empty()) throw InvalidArgument("trials: calibration needs samples");
  const Rng root(options.seed);
  double sum_log = 0.0;
  std::uint64_t samples = 0;
  ConfigurationOracle oracle(Configuration(options.n, {}), OracleMode::TernaryAnonymous);
  for (std::size_t g = 0; g < options.d_grid.size(); ++g) {
    const std::uint64_t d = options.d_grid[g];
    if (d == 0 || d > options.n) throw InvalidArgument("d_grid: entries must lie in [1, n]");
    for (std::uint64_t trial = 0; trial < options.trials; ++trial) {
      const Rng base = root.substream(g * options.trials + trial, stream::kEstimator);
      Rng config_rng = base.substream(0, stream::kConfiguration);
      Rng alg_rng = base.substream(0, stream::kAlgorithm);
      oracle.reset(Configuration::random(options.n, d, config_rng));
      const Estimate e = estimate_defectives(oracle, raw, alg_rng);
      sum_log += std::log2(e.refined.d_prime / static_cast<double>(d));
      ++samples;
    }
  }
  CalibrationRecord rec;
  rec.a = a;
  rec.c = c;
  rec.f = std::exp2(-sum_log / static_cast<double>(samples));
  rec.trials = samples;
  rec.seed = options.seed;
  return rec;
}

UnknownDResult run_deferral_unknown_d(Oracle& oracle, const EstimatorParams& estimator,
                                      const DeferralParams& deferral, Rng& rng) {
  UnknownDResult out;
  const TestOutcome whole = oracle.test(RangeUnion(Interval{0, oracle.population()}));
  switch (whole.verdict()) {
    case Verdict::Pure: return out;
    case Verdict::Tainted:
      if (!whole.identity()) throw ContractViolation("unknown-d deferral: tainted result without identity");
      out.defectives.push_back(*whole.identity());
      return out;
    case Verdict::Impure: break;
  }
  out.estimate = estimate_defectives(oracle, estimator, rng);
  DeferralResult r = run_deferral_estimated(oracle, out.estimate->refined.d_prime, deferral, rng);
  out.defectives = std::move(r.defectives);
  out.rounds = std::move(r.rounds);
  return out;
}

}  // namespace gt
