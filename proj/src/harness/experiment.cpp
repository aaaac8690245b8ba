#include "gt/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "gt/anonymous.hpp"
#include "gt/applications/mac.hpp"
#include "gt/applications/sensors.hpp"
#include "gt/binary_tree.hpp"
#include "gt/core/configuration.hpp"
#include "gt/core/errors.hpp"
#include "gt/core/oracle.hpp"
#include "gt/core/split.hpp"
#include "gt/counting.hpp"
#include "gt/deferral.hpp"
#include "gt/estimation.hpp"
#include "gt/hashed.hpp"

namespace gt {

namespace {

bool known_algorithm(const std::string& name) {
  return std::find(std::begin(kAlgorithms), std::end(kAlgorithms), name) != std::end(kAlgorithms);
}

bool uses_p(const std::string& a) {
  return a == "binary-tree" || a == "halfway" || a == "deferral" || a == "deferral-unknown" ||
         a == "gl-baseline" || a == "counting" || a == "counting-unknown";
}

bool uses_s(const std::string& a) {
  return a == "deferral" || a == "deferral-unknown" || a == "gl-baseline" || a == "counting" ||
         a == "counting-unknown";
}

bool uses_estimator(const std::string& a) { return a == "deferral-unknown" || a == "estimator"; }

OracleMode default_mode(const std::string& a) {
  if (a == "counting" || a == "counting-unknown") return OracleMode::CountingIdentifying;
  if (a == "anonymous") return OracleMode::TernaryAnonymous;
  return OracleMode::TernaryIdentifying;
}

OracleMode mode_of(const ExperimentConfig& c) { return c.mode.value_or(default_mode(c.algorithm)); }

EstimatorParams estimator_params(const ExperimentConfig& c) {
  std::vector<CalibrationRecord> records;
  if (!c.calibration_file.empty()) records = load_calibrations(c.calibration_file);
  return EstimatorParams::lookup(c.a, c.c, records);
}

IdentifyParams identify_params(const ExperimentConfig& c) {
  IdentifyParams ip = c.algorithm == "halfway" ? halfway_params() : IdentifyParams{};
  if (c.p) ip.p = *c.p;
  return ip;
}

DeferralParams deferral_params(const ExperimentConfig& c) {
  DeferralParams dp;
  if (c.p) dp.p = *c.p;
  if (c.s) dp.s = *c.s;
  dp.defer = c.algorithm != "gl-baseline";
  return dp;
}

CountingParams counting_params(const ExperimentConfig& c) {
  CountingParams cp;
  if (c.p) cp.p = *c.p;
  if (c.s) cp.s = *c.s;
  return cp;
}

HashedParams hashed_params(const ExperimentConfig& c) {
  HashedParams hp;
  hp.cap_constant = c.cap;
  return hp;
}

bool same_set(std::vector<ItemId> got, const Configuration& config) {
  std::sort(got.begin(), got.end());
  return got == config.defectives();
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!known_algorithm(algorithm)) throw InvalidArgument("algorithm: unknown algorithm '" + algorithm + "'");
  if (n == 0) throw InvalidArgument("n: population must be positive");
  if (d > n) throw InvalidArgument("d: exceeds n");
  if (trials == 0) throw InvalidArgument("trials: at least one trial required");
  if (threads == 0) throw InvalidArgument("threads: at least one worker required");
  if (p && !uses_p(algorithm)) throw InvalidArgument("p: not a parameter of " + algorithm);
  if (s && !uses_s(algorithm)) throw InvalidArgument("s: not a parameter of " + algorithm);
  if (p && !(*p > 0 && *p < 1)) throw InvalidArgument("p: must lie in (0, 1)");
  if (s && !(*s > 0)) throw InvalidArgument("s: must be positive");
  if (uses_estimator(algorithm)) estimator_params(*this);
  if (algorithm == "estimator" && d == 0) throw InvalidArgument("d: the estimator needs at least one defective");
  if (algorithm == "hashed-unknown" || (algorithm == "mac" && protocol == "hashed")) hashed_params(*this).validate();
  if (algorithm == "mac") {
    parse_mac_protocol(protocol);
    if (mode && *mode != OracleMode::TernaryIdentifying) throw InvalidArgument("mode: mac slots are ternary identifying");
  }
  if (algorithm == "sensors") {
    parse_aggregate(aggregate);
    parse_sensor_algorithm(sensor_algorithm);
    if (mode) throw InvalidArgument("mode: sensors derive the mode from the aggregate");
  }
  if (mode && algorithm != "mac" && algorithm != "sensors") {
    const OracleMode m = *mode;
    if (algorithm == "counting" || algorithm == "counting-unknown") {
      if (m != OracleMode::CountingIdentifying) throw InvalidArgument("mode: counting needs counting-identifying");
    } else if (algorithm != "anonymous" && !is_identifying(m)) {
      throw InvalidArgument("mode: " + algorithm + " needs identifying results");
    }
  }
  if (uses_p(algorithm)) {
    if (algorithm == "counting" || algorithm == "counting-unknown") {
      counting_params(*this).validate();
    } else if (algorithm == "binary-tree" || algorithm == "halfway") {
      identify_params(*this).validate();
    } else {
      deferral_params(*this).validate();
    }
  }
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = nlohmann::json{{"algorithm", c.algorithm}, {"n", c.n},   {"d", c.d},     {"trials", c.trials},
                     {"seed", c.seed},           {"a", c.a},   {"c", c.c},     {"cap", c.cap},
                     {"protocol", c.protocol},   {"aggregate", c.aggregate},   {"sensor_algorithm", c.sensor_algorithm},
                     {"d_known", c.d_known},     {"threads", c.threads}};
  if (c.p) j["p"] = *c.p;
  if (c.s) j["s"] = *c.s;
  if (c.mode) j["mode"] = std::string(to_string(*c.mode));
  if (!c.calibration_file.empty()) j["calibration_file"] = c.calibration_file;
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  static const std::set<std::string> keys = {"algorithm", "n",        "d",         "trials",
                                             "seed",      "p",        "s",         "a",
                                             "c",         "cap",      "mode",      "protocol",
                                             "aggregate", "sensor_algorithm", "d_known", "threads",
                                             "calibration_file"};
  if (!j.is_object()) throw InvalidArgument("scenario: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!keys.count(key)) throw InvalidArgument(key + ": unknown scenario key");
  }
  auto get = [&j](const char* key, auto& field) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(field);
    } catch (const nlohmann::json::exception&) {
      throw InvalidArgument(std::string(key) + ": wrong type");
    }
  };
  get("algorithm", c.algorithm);
  get("n", c.n);
  get("d", c.d);
  get("trials", c.trials);
  get("seed", c.seed);
  get("a", c.a);
  get("c", c.c);
  get("cap", c.cap);
  get("protocol", c.protocol);
  get("aggregate", c.aggregate);
  get("sensor_algorithm", c.sensor_algorithm);
  get("d_known", c.d_known);
  get("threads", c.threads);
  get("calibration_file", c.calibration_file);
  if (j.contains("p")) {
    double v = 0;
    get("p", v);
    c.p = v;
  }
  if (j.contains("s")) {
    double v = 0;
    get("s", v);
    c.s = v;
  }
  if (j.contains("mode")) {
    std::string m;
    get("mode", m);
    c.mode = parse_oracle_mode(m);
  }
}

TrialRecord run_trial(const ExperimentConfig& c, std::uint64_t trial) {
  const Rng root = Rng(c.seed).substream(trial, 0);
  Rng config_rng = root.substream(0, stream::kConfiguration);
  Rng rng = root.substream(0, stream::kAlgorithm);
  const std::string& a = c.algorithm;
  TrialRecord rec;

  if (a == "mac") {
    MacOptions opt;
    opt.n = c.n;
    opt.protocol = parse_mac_protocol(c.protocol);
    opt.d_known = c.d_known;
    opt.estimator = EstimatorParams::shipped();
    opt.hashed = hashed_params(c);
    const MacRun run = mac_simulate(c.d, opt, rng);
    rec.tests = run.slots;
    rec.rounds = run.slots;
    rec.exact = run.delivered;
    return rec;
  }

  return run_on(c, Configuration::random(c.n, c.d, config_rng), rng);
}

TrialRecord run_on(const ExperimentConfig& c, const Configuration& config, Rng& rng) {
  const std::string& a = c.algorithm;
  TrialRecord rec;
  if (a == "mac") throw InvalidArgument("algorithm: mac draws its own contender set");

  if (a == "sensors") {
    SensorNet net(config.population(), config);
    DiagnosisOptions opt;
    opt.algorithm = parse_sensor_algorithm(c.sensor_algorithm);
    opt.aggregate = parse_aggregate(c.aggregate);
    opt.d_known = c.d_known;
    const Diagnosis dg = diagnose_dead(net, opt, rng);
    rec.tests = dg.rounds;
    rec.rounds = dg.rounds;
    rec.messages = dg.messages;
    rec.exact = dg.exact;
    return rec;
  }

  ConfigurationOracle oracle(config, mode_of(c));
  std::vector<ItemId> found;
  if (a == "binary-tree" || a == "halfway") {
    found = run_binary_tree(oracle, identify_params(c));
    rec.tests = oracle.test_count() - 1;  // Identify's tests, without the whole-set test
    rec.exact = same_set(found, config);
    return rec;
  }
  if (a == "deferral" || a == "gl-baseline") {
    const DeferralResult r = run_deferral(oracle, config.defective_count(), deferral_params(c), rng);
    found = r.defectives;
    rec.rounds = r.rounds.size();
  } else if (a == "deferral-unknown") {
    const UnknownDResult r = run_deferral_unknown_d(oracle, estimator_params(c), deferral_params(c), rng);
    found = r.defectives;
    rec.rounds = r.rounds.size();
    if (r.estimate) rec.estimate = r.estimate->refined.d_prime;
  } else if (a == "counting") {
    found = run_counting(oracle, config.defective_count(), counting_params(c), rng).defectives;
  } else if (a == "counting-unknown") {
    found = run_counting_unknown_d(oracle, counting_params(c), rng).defectives;
  } else if (a == "hashed") {
    const HashedResult r = run_hashed(oracle, config.defective_count(), rng, hashed_params(c));
    found = r.defectives;
    rec.rounds = r.rounds.size();
  } else if (a == "hashed-unknown") {
    const HashedResult r = run_hashed_unknown_d(oracle, rng, hashed_params(c));
    found = r.defectives;
    rec.rounds = r.rounds.size();
  } else if (a == "anonymous") {
    found = an(oracle);
  } else if (a == "estimator") {
    if (config.defective_count() == 0) throw InvalidArgument("d: the estimator needs at least one defective");
    const Estimate e = estimate_defectives(oracle, estimator_params(c), rng);
    rec.tests = oracle.test_count();
    rec.estimate = e.refined.d_prime;
    rec.exact = true;
    return rec;
  }
  rec.tests = oracle.test_count();
  rec.exact = same_set(found, config);
  return rec;
}

void summarize(ExperimentResult& r) {
  const ExperimentConfig& c = r.config;
  const auto& recs = r.records;
  const double t = static_cast<double>(recs.size());
  if (recs.empty()) return;

  std::vector<std::uint64_t> tests;
  tests.reserve(recs.size());
  double sum = 0, rounds = 0, messages = 0;
  std::uint64_t factor2 = 0, estimates = 0;
  r.failures = 0;
  for (const auto& rec : recs) {
    tests.push_back(rec.tests);
    sum += static_cast<double>(rec.tests);
    rounds += static_cast<double>(rec.rounds);
    messages += static_cast<double>(rec.messages);
    if (!rec.exact) ++r.failures;
    if (rec.estimate) {
      ++estimates;
      const double q = *rec.estimate / static_cast<double>(c.d);
      if (q >= 0.5 && q <= 2.0) ++factor2;
    }
  }
  r.mean_tests = sum / t;
  double ss = 0;
  for (auto v : tests) ss += (static_cast<double>(v) - r.mean_tests) * (static_cast<double>(v) - r.mean_tests);
  r.stderr_tests = recs.size() > 1 ? std::sqrt(ss / (t - 1)) / std::sqrt(t) : 0.0;
  std::sort(tests.begin(), tests.end());
  auto rank = [&tests](double q) {
    const auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(tests.size())));
    return tests[std::clamp<std::size_t>(k, 1, tests.size()) - 1];
  };
  r.p50 = rank(0.5);
  r.p90 = rank(0.9);
  r.p99 = rank(0.99);
  r.max = tests.back();
  r.mean_per_d = c.d > 0 ? r.mean_tests / static_cast<double>(c.d) : 0.0;
  r.mean_rounds = rounds / t;
  r.mean_messages = messages / t;
  r.info_lower_bound = info_lower_bound(c.n, c.d);
  if (estimates > 0) r.estimator_factor2_rate = static_cast<double>(factor2) / static_cast<double>(estimates);
  if (c.algorithm == "mac" && r.mean_tests > 0) r.throughput = static_cast<double>(c.d) / r.mean_tests;

  const double d = static_cast<double>(c.d);
  const std::string& a = c.algorithm;
  r.analytic.reset();
  r.analytic_label.clear();
  if (a == "binary-tree" && c.d <= 5000) {
    r.analytic = expected_tests_table(identify_params(c).p, std::max<std::uint64_t>(c.d, 2))[c.d];
    r.analytic_label = "E_d";
  } else if (a == "halfway" || (a == "mac" && c.protocol == "halfway")) {
    r.analytic = 2.885 * d;
    r.analytic_label = "2.885d";
  } else if (a == "deferral" || (a == "mac" && c.protocol == "deferral" && c.d_known)) {
    const DeferralParams dp = deferral_params(c);
    r.analytic = expected_total_estimate(dp.s, dp.p).per_defective * d;
    r.analytic_label = "model";
  } else if (a == "deferral-unknown" || (a == "mac" && c.protocol == "deferral")) {
    r.analytic = 2.08 * d;
    r.analytic_label = "2.08d";
  } else if (a == "counting" || a == "counting-unknown") {
    r.analytic = 1.896 * d;
    r.analytic_label = "1.896d";
  } else if (a == "hashed" || (a == "mac" && c.protocol == "hashed" && c.d_known)) {
    r.analytic = 4 * d;
    r.analytic_label = "4d";
  } else if (a == "anonymous" && c.d >= 2) {
    r.analytic = anonymous_worst_case_bound(c.d, c.n);
    r.analytic_label = "worst_case_leading";
  } else if (a == "estimator") {
    r.analytic = d;
    r.analytic_label = "d";
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.config = config;
  result.records.resize(config.trials);

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::uint64_t t = next++; t < config.trials; t = next++) {
      try {
        result.records[t] = run_trial(config, t);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = config.trials;
      }
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(config.threads, config.trials));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  summarize(result);
  return result;
}

}  // namespace gt
