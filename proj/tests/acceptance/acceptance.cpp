// Acceptance run: one PASS/FAIL line per criterion. Arguments select a subset
// of criteria by number; no arguments runs all ten.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "gt/anonymous.hpp"
#include "gt/applications/probability.hpp"
#include "gt/applications/sensors.hpp"
#include "gt/binary_tree.hpp"
#include "gt/core/split.hpp"
#include "gt/deferral.hpp"
#include "gt/harness/experiment.hpp"
#include "gt/harness/verify.hpp"
#include "gt/hashed.hpp"
#include "oracles.hpp"

using namespace gt;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

json load(const char* path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(std::string("cannot open ") + path);
  return json::parse(in);
}

const std::uint64_t kN = std::uint64_t{1} << 20;

ExperimentConfig config(const std::string& algo, std::uint64_t n, std::uint64_t d, std::uint64_t trials,
                        std::uint64_t seed) {
  ExperimentConfig c;
  c.algorithm = algo;
  c.n = n;
  c.d = d;
  c.trials = trials;
  c.seed = seed;
  return c;
}

std::vector<ItemId> sorted(std::vector<ItemId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

class Acceptance {
 public:
  Acceptance(json thresholds, json reference) : th_(std::move(thresholds)), ref_(std::move(reference)) {}

  Outcome correctness() {
    const json& t = th_["correctness"];
    Outcome v;
    const auto t0 = std::chrono::steady_clock::now();
    std::uint64_t runs = 0, failures = 0;
    for (const auto& algo : t["algorithms"]) {
      for (std::uint64_t n = 1; n <= t["exhaustive_max_n"].get<std::uint64_t>(); ++n) {
        const VerifyReport r = verify_small(algo, n, t["exhaustive_seeds"]);
        runs += r.runs;
        failures += r.failures;
        v.require(r.failures == 0, algo.get<std::string>() + " n=" + std::to_string(n) + " " + r.first_failure);
      }
      for (std::uint64_t d : t["large_d"].get<std::vector<std::uint64_t>>()) {
        const auto r = run_experiment(config(algo, kN, d, t["large_seeds"], t["seed"]));
        runs += r.records.size();
        failures += r.failures;
        v.require(r.failures == 0, algo.get<std::string>() + " n=2^20 d=" + std::to_string(d));
      }
    }
    const double secs = seconds_since(t0);
    v.note(std::to_string(runs) + " runs, " + std::to_string(failures) + " failures, " + fmt("%.1fs", secs));
    v.require(secs < t["runtime_limit_s"].get<double>(), "runtime limit");
    return v;
  }

  Outcome identify_table() {
    Outcome v;
    const double tol = th_["identify_table"]["abs_tol"];
    const auto e = expected_tests_table(SplitConstants::p2, 1000);
    const auto oracle = testing::identify_expectation(SplitConstants::p2, 1000);
    double worst = 0, oracle_gap = 0;
    for (const auto& [key, printed] : ref_["identify_table"].items()) {
      const unsigned d = static_cast<unsigned>(std::stoul(key));
      const double diff = std::fabs(e[d] - printed.get<double>());
      worst = std::max(worst, diff);
      oracle_gap = std::max(oracle_gap, std::fabs(e[d] - static_cast<double>(oracle[d])));
      v.require(diff <= tol, "E_" + key + " off by " + fmt("%.2e", diff));
    }
    v.require(ref_["identify_table"].size() == 20, "20 printed values");
    v.require(oracle_gap <= th_["identify_table"]["oracle_tol"].get<double>(), "independent recurrence disagrees");
    v.note("max |diff| " + fmt("%.2e", worst) + ", recurrence gap " + fmt("%.1e", oracle_gap));
    return v;
  }

  Outcome identify_simulation() {
    const json& t = th_["identify"];
    Outcome v;
    const auto ref = testing::identify_expectation(SplitConstants::p2, 100);
    for (std::uint64_t d : t["d"].get<std::vector<std::uint64_t>>()) {
      auto c = config("binary-tree", kN, d, t["trials"], t["seed"]);
      c.p = SplitConstants::p2;
      const auto r = run_experiment(c);
      const double expect = static_cast<double>(ref[d]);
      const double z = (r.mean_tests - expect) / r.stderr_tests;
      v.require(r.failures == 0, "recovery at d=" + std::to_string(d));
      v.require(std::fabs(z) <= t["max_standard_errors"].get<double>(), "d=" + std::to_string(d) + " mean outside band");
      v.note("d=" + std::to_string(d) + " mean " + fmt("%.3f", r.mean_tests) + " vs " + fmt("%.3f", expect) + " (z " +
             fmt("%+.2f", z) + ")");
    }
    auto c = config("binary-tree", kN, 100, t["trials"], t["seed"]);
    c.p = SplitConstants::p_star;
    const auto r = run_experiment(c);
    v.require(r.failures == 0, "recovery at pStar");
    v.require(r.mean_per_d <= t["pstar_max_per_d"].get<double>(), "pStar mean/d");
    v.note("pStar d=100 mean/d " + fmt("%.4f", r.mean_per_d));
    return v;
  }

  Outcome deferral() {
    const json& t = th_["deferral"];
    Outcome v;
    const double limit = t["per_d"].get<double>() * t["slack"].get<double>();
    for (std::uint64_t d : t["d"].get<std::vector<std::uint64_t>>()) {
      const auto r = deferral_run(d);
      const auto gl = run_experiment(config("gl-baseline", kN, d, t["trials"], t["seed"]));
      v.require(r.failures == 0 && gl.failures == 0, "recovery at d=" + std::to_string(d));
      v.require(r.mean_per_d <= limit, "d=" + std::to_string(d) + " mean/d above limit");
      v.require(r.mean_per_d < gl.mean_per_d, "d=" + std::to_string(d) + " not below baseline");
      v.note("d=" + std::to_string(d) + " " + fmt("%.4f", r.mean_per_d) + " vs baseline " + fmt("%.4f", gl.mean_per_d));
    }
    return v;
  }

  Outcome unknown_d() {
    const json& t = th_["unknown_d"];
    Outcome v;
    // Least squares for mean = alpha d + beta lg d.
    double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0;
    for (std::uint64_t d : t["d"].get<std::vector<std::uint64_t>>()) {
      auto c = config("deferral-unknown", kN, d, t["trials"], t["seed"]);
      const auto r = run_experiment(c);
      const double x = static_cast<double>(d), y = std::log2(x);
      sxx += x * x;
      sxy += x * y;
      syy += y * y;
      sx += x * r.mean_tests;
      sy += y * r.mean_tests;
      const double rate = r.estimator_factor2_rate.value_or(0);
      v.require(r.failures == 0, "recovery at d=" + std::to_string(d));
      v.require(rate >= t["factor2_min"].get<double>(), "factor-2 rate at d=" + std::to_string(d));
      v.note("d=" + std::to_string(d) + " mean " + fmt("%.1f", r.mean_tests) + " factor-2 " + fmt("%.4f", rate));
    }
    const double det = sxx * syy - sxy * sxy;
    const double alpha = (sx * syy - sy * sxy) / det;
    const double beta = (sy * sxx - sx * sxy) / det;
    v.require(alpha <= t["alpha"].get<double>() * t["slack"].get<double>(), "alpha above limit");
    v.note("alpha " + fmt("%.4f", alpha) + ", beta " + fmt("%.2f", beta));
    return v;
  }

  Outcome counting() {
    const json& t = th_["counting"];
    Outcome v;
    const double limit = t["per_d"].get<double>() * t["slack"].get<double>();
    for (std::uint64_t d : th_["deferral"]["d"].get<std::vector<std::uint64_t>>()) {
      auto c = config("counting", kN, d, th_["deferral"]["trials"], th_["deferral"]["seed"]);
      c.s = 0.58;
      c.p = 0.4715;
      const auto r = run_experiment(c);
      const double ternary = deferral_run(d).mean_per_d;
      v.require(r.failures == 0, "recovery at d=" + std::to_string(d));
      v.require(r.mean_per_d <= limit, "d=" + std::to_string(d) + " mean/d above limit");
      v.require(r.mean_per_d < ternary, "d=" + std::to_string(d) + " not below deferral");
      v.note("d=" + std::to_string(d) + " " + fmt("%.4f", r.mean_per_d) + " vs deferral " + fmt("%.4f", ternary));
    }
    return v;
  }

  Outcome hashed() {
    const json& t = th_["hashed"];
    Outcome v;
    const double gamma = t["gamma"];
    for (std::uint64_t d : t["d"].get<std::vector<std::uint64_t>>()) {
      const std::uint64_t trials = t["trials"];
      std::vector<std::uint64_t> totals;
      bool rounds_ok = true, exact = true;
      for (std::uint64_t trial = 0; trial < trials; ++trial) {
        const Rng root = Rng(t["seed"].get<std::uint64_t>()).substream(trial, 0);
        Rng cr = root.substream(0, stream::kConfiguration), ar = root.substream(0, stream::kAlgorithm);
        const auto cfg = Configuration::random(kN, d, cr);
        ConfigurationOracle o(cfg, OracleMode::TernaryIdentifying);
        const auto res = run_hashed(o, d, ar);
        exact &= sorted(res.defectives) == cfg.defectives();
        for (const auto& rd : res.rounds) rounds_ok &= rd.tests <= 2 * rd.d_remaining;
        totals.push_back(o.test_count());
      }
      double mean = 0;
      for (auto x : totals) mean += static_cast<double>(x);
      mean /= static_cast<double>(trials);
      std::sort(totals.begin(), totals.end());
      const auto p99 = totals[static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(trials))) - 1];
      const double dd = static_cast<double>(d);
      v.require(exact, "recovery at d=" + std::to_string(d));
      v.require(rounds_ok, "round budget at d=" + std::to_string(d));
      v.require(mean <= 4 * dd, "mean above 4d at d=" + std::to_string(d));
      v.require(static_cast<double>(p99) <= gamma * dd, "p99 above gamma d at d=" + std::to_string(d));
      v.note("d=" + std::to_string(d) + " mean/d " + fmt("%.3f", mean / dd) + " p99/d " +
             fmt("%.3f", static_cast<double>(p99) / dd));
    }
    v.note("gamma " + fmt("%.2f", gamma));
    return v;
  }

  Outcome anonymous() {
    const json& t = th_["anonymous"];
    Outcome v;
    const double c = t["C"];
    std::vector<double> measured;
    for (std::uint64_t n : t["exhaustive_n"].get<std::vector<std::uint64_t>>()) {
      std::uint64_t worst = 0;
      bool exact = true;
      for (std::uint64_t x = 0; x < n; ++x) {
        for (std::uint64_t y = x + 1; y < n; ++y) {
          ConfigurationOracle o(Configuration(n, {ItemId{x}, ItemId{y}}), OracleMode::TernaryAnonymous);
          const auto got = sorted(an(o));
          exact &= got.size() == 2 && got[0] == ItemId{x} && got[1] == ItemId{y};
          worst = std::max(worst, o.test_count());
        }
      }
      const double lead = anonymous_worst_case_bound(2, n);
      measured.push_back(static_cast<double>(worst) - lead);
      v.require(exact, "recovery at n=" + std::to_string(n));
      v.require(static_cast<double>(worst) <= lead + c, "d=2 worst above bound at n=" + std::to_string(n));
      v.note("n=" + std::to_string(n) + " worst " + std::to_string(worst) + " (C_n " + fmt("%.3f", measured.back()) +
             ")");
    }
    const auto [lo, hi] = std::minmax_element(measured.begin(), measured.end());
    v.require(*hi - *lo <= t["C_stability"].get<double>(), "C not stable across n");

    double sample_c = -1e9;
    Rng rng(t["seed"].get<std::uint64_t>());
    for (std::uint64_t n : t["sample_n"].get<std::vector<std::uint64_t>>()) {
      for (std::uint64_t d = 3; d <= 6; ++d) {
        for (std::uint64_t s = 0; s < t["samples"].get<std::uint64_t>(); ++s) {
          const auto cfg = Configuration::random(n, d, rng);
          ConfigurationOracle o(cfg, OracleMode::TernaryAnonymous);
          v.require(sorted(an(o)) == cfg.defectives(), "sampled recovery");
          sample_c = std::max(sample_c, static_cast<double>(o.test_count()) - anonymous_worst_case_bound(d, n));
        }
      }
    }
    v.require(sample_c <= c, "sampled d=3..6 above bound");
    v.note("sampled d=3..6 max excess " + fmt("%.3f", sample_c) + ", C " + fmt("%.1f", c));
    return v;
  }

  Outcome applications() {
    const json& t = th_["applications"];
    Outcome v;
    auto mac = config("mac", kN, 100, t["mac_trials"], t["seed"]);
    mac.protocol = "deferral";
    const auto def = run_experiment(mac);
    mac.protocol = "halfway";
    const auto half = run_experiment(mac);
    v.require(def.failures == 0 && half.failures == 0, "MAC delivery");
    v.require(def.throughput.value_or(0) >= t["mac_min_throughput"].get<double>(), "deferral throughput");
    v.require(def.throughput.value_or(0) > half.throughput.value_or(0), "not above halfway");
    v.note("throughput " + fmt("%.4f", *def.throughput) + " vs halfway " + fmt("%.4f", *half.throughput));

    const std::uint64_t n = t["sensor_n"], d = t["sensor_d"], seeds = t["sensor_seeds"];
    bool exact = true, rounds_match = true, invariant = true;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
      Rng cr = Rng(seed).substream(0, stream::kConfiguration);
      const auto dead = Configuration::random(n, d, cr);
      Rng root(seed);
      DiagnosisOptions opt;
      opt.algorithm = SensorAlgorithm::Deferral;
      opt.aggregate = AggregateKind::IdSum;
      opt.d_known = true;
      const Diagnosis dx = diagnose_dead(SensorNet(n, dead), opt, root);
      exact &= dx.exact;

      ConfigurationOracle plain(dead, OracleMode::TernaryIdentifying);
      Rng alg = root.substream(0, stream::kAlgorithm);
      run_deferral(plain, d, {}, alg);
      rounds_match &= dx.rounds == plain.test_count();

      // Another tree draw must leave the transcript unchanged.
      SensorNetworkOracle other(SensorNet(n, dead), AggregateKind::IdSum, OracleMode::TernaryIdentifying,
                                Rng(seed + 1000003).substream(0, stream::kTree));
      Rng alg2 = root.substream(0, stream::kAlgorithm);
      run_deferral(other, d, {}, alg2);
      invariant &= other.test_count() == plain.test_count();
      for (std::size_t i = 0; invariant && i < plain.ledger().entries().size(); ++i) {
        invariant &= other.ledger().entries()[i].outcome == plain.ledger().entries()[i].outcome &&
                     other.ledger().entries()[i].expression == plain.ledger().entries()[i].expression;
      }
    }
    v.require(exact, "sensor diagnosis exact");
    v.require(rounds_match, "rounds equal test count");
    v.require(invariant, "tree-choice invariance");
    v.note("sensors exact on " + std::to_string(seeds) + " seeds");
    return v;
  }

  Outcome constants() {
    const json& t = th_["constants"];
    Outcome v;
    const double tol = t["root_tol"];
    int k = 2;
    for (const char* name : {"p2", "p3", "p4"}) {
      const double root = solve_split_root(k);
      const double printed = ref_["split_roots"][name];
      v.require(std::fabs(root - printed) <= tol, std::string(name) + " root");
      v.require(std::fabs(root - testing::split_root_newton(k)) <= 1e-12, std::string(name) + " vs Newton");
      ++k;
    }
    const double close = t["occupancy_close"];
    for (const auto& [key, printed] : ref_["occupancy_075"].items()) {
      const double p = bucket_occupancy(static_cast<unsigned>(std::stoul(key)), 0.75);
      v.require(p <= printed.get<double>() && printed.get<double>() - p <= close, "P_0.75(" + key + ")");
    }
    double worst = 0;
    for (std::uint64_t d = 0; d <= 4; ++d) {
      for (std::uint64_t m = 0; m <= 4; ++m) {
        double total = 0;
        for (std::uint64_t i = 0; i <= d; ++i) {
          const double p = p_test(i, 4, d, static_cast<double>(m) / 4);
          total += p;
          worst = std::max(worst, std::fabs(p - testing::subset_hit_probability(i, 4, d, m)));
        }
        v.require(std::fabs(total - 1) <= t["p_test_tol"].get<double>(), "p_test sum");
      }
    }
    v.require(worst <= t["p_test_tol"].get<double>(), "p_test vs enumeration");
    v.require(std::fabs(p_test(1, 4, 2, 0.5) - ref_["p_test_n4_d2_half_i1"].get<double>()) <= 1e-12, "p_test example");
    v.note("roots within " + fmt("%.0e", tol) + ", p_test max gap " + fmt("%.1e", worst));
    return v;
  }

 private:
  ExperimentResult deferral_run(std::uint64_t d) {
    auto it = deferral_cache_.find(d);
    if (it != deferral_cache_.end()) return it->second;
    auto c = config("deferral", kN, d, th_["deferral"]["trials"], th_["deferral"]["seed"]);
    c.s = 0.8;
    c.p = 0.479;
    return deferral_cache_[d] = run_experiment(c);
  }

  json th_;
  json ref_;
  std::map<std::uint64_t, ExperimentResult> deferral_cache_;
};

}  // namespace

int main(int argc, char** argv) {
  Acceptance acc(load(GT_THRESHOLDS), load(GT_REFERENCE));
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"correctness", [&] { return acc.correctness(); }},
      {"identify table", [&] { return acc.identify_table(); }},
      {"identify simulation", [&] { return acc.identify_simulation(); }},
      {"deferral headline", [&] { return acc.deferral(); }},
      {"unknown-d pipeline", [&] { return acc.unknown_d(); }},
      {"counting headline", [&] { return acc.counting(); }},
      {"hashed variant", [&] { return acc.hashed(); }},
      {"anonymous worst case", [&] { return acc.anonymous(); }},
      {"applications", [&] { return acc.applications(); }},
      {"constants and formulas", [&] { return acc.constants(); }},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failed += !v.pass;
    std::printf("%s criterion %d (%s) [%.1fs]: %s\n", v.pass ? "PASS" : "FAIL", id, criteria[i].first,
                seconds_since(t0), v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
