#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gt/core/errors.hpp"
#include "gt/estimation.hpp"
#include "gt/harness/experiment.hpp"
#include "gt/harness/report.hpp"
#include "gt/harness/tables.hpp"
#include "gt/harness/verify.hpp"

namespace {

struct RunFlags {
  std::string algo = "deferral";
  std::uint64_t n = std::uint64_t{1} << 20;
  std::vector<std::uint64_t> d = {100};
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::optional<double> p, s;
  unsigned a = 4, c = 8;
  double cap = 8.0;
  std::string mode;
  std::string protocol = "deferral";
  std::string aggregate = "idsum";
  std::string sensor_algo = "deferral";
  bool d_unknown = false;
  unsigned threads = 1;
  std::string calibration;
  std::string scenario;
  std::string out;
  std::string format = "csv";
};

void add_output(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--out", f.out, "Output path (default stdout)");
  cmd->add_option("--format", f.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
}

void add_common(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--n", f.n, "Population size");
  cmd->add_option("--d", f.d, "Defective counts (one row each)");
  cmd->add_option("--trials", f.trials, "Trials per row");
  cmd->add_option("--seed", f.seed, "Base seed");
  cmd->add_option("--threads", f.threads, "Worker threads");
  cmd->add_option("--scenario", f.scenario, "JSON scenario file (object or array of objects)");
  add_output(cmd, f);
}

std::vector<gt::ExperimentConfig> configs_from(const RunFlags& f, const std::string& algorithm) {
  std::vector<gt::ExperimentConfig> configs;
  if (!f.scenario.empty()) {
    std::ifstream in(f.scenario);
    if (!in) throw gt::InvalidArgument("scenario: cannot open " + f.scenario);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw gt::InvalidArgument("scenario: " + std::string(e.what()));
    }
    if (!j.is_array()) j = nlohmann::json::array({j});
    for (const auto& item : j) {
      gt::ExperimentConfig c;
      c.algorithm = algorithm;
      item.get_to(c);
      configs.push_back(c);
    }
    return configs;
  }
  for (auto d : f.d) {
    gt::ExperimentConfig c;
    c.algorithm = algorithm;
    c.n = f.n;
    c.d = d;
    c.trials = f.trials;
    c.seed = f.seed;
    c.p = f.p;
    c.s = f.s;
    c.a = f.a;
    c.c = f.c;
    c.cap = f.cap;
    if (!f.mode.empty()) c.mode = gt::parse_oracle_mode(f.mode);
    c.protocol = f.protocol;
    c.aggregate = f.aggregate;
    c.sensor_algorithm = f.sensor_algo;
    c.d_known = !f.d_unknown;
    c.threads = f.threads;
    c.calibration_file = f.calibration;
    configs.push_back(c);
  }
  return configs;
}

int emit(const RunFlags& f, const std::vector<gt::ExperimentResult>& results) {
  std::ofstream file;
  if (!f.out.empty()) {
    file.open(f.out);
    if (!file) throw gt::InvalidArgument("out: cannot write " + f.out);
  }
  std::ostream& out = f.out.empty() ? std::cout : file;
  if (f.format == "json") {
    gt::write_json(out, results);
  } else {
    gt::write_csv(out, results);
  }
  for (const auto& r : results) {
    if (r.failures > 0) {
      std::cerr << r.config.algorithm << " d=" << r.config.d << ": " << r.failures << " trials missed the defective set\n";
      return 1;
    }
  }
  return 0;
}

int run_rows(const RunFlags& f, const std::string& algorithm) {
  std::vector<gt::ExperimentResult> results;
  for (const auto& c : configs_from(f, algorithm)) results.push_back(gt::run_experiment(c));
  return emit(f, results);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive group testing simulator"};
  app.require_subcommand(1);
  RunFlags f;

  auto* run = app.add_subcommand("run", "Monte Carlo experiment, one report row per d");
  run->add_option("--algo", f.algo, "Algorithm")->check(CLI::IsMember(std::vector<std::string>(
                                                          std::begin(gt::kAlgorithms), std::end(gt::kAlgorithms))));
  add_common(run, f);
  run->add_option("--p", f.p, "Split fraction");
  run->add_option("--s", f.s, "Spread factor");
  run->add_option("--a", f.a, "Estimator resolution");
  run->add_option("--c", f.c, "Estimator subsets per experiment");
  run->add_option("--cap", f.cap, "Hashed unknown-d budget constant");
  run->add_option("--mode", f.mode, "Oracle mode")
      ->check(CLI::IsMember({"ternary-identifying", "ternary-anonymous", "counting-identifying", "counting-anonymous"}));
  run->add_option("--calibration", f.calibration, "Calibration records JSON");
  run->add_flag("--d-unknown", f.d_unknown, "mac/sensors: run the unknown-d variants");
  run->add_option("--protocol", f.protocol, "mac protocol");
  run->add_option("--aggregate", f.aggregate, "sensors aggregate");
  run->add_option("--sensor-algo", f.sensor_algo, "sensors diagnosis algorithm");

  auto* mac = app.add_subcommand("mac", "Slotted MAC contention resolution");
  add_common(mac, f);
  mac->add_option("--protocol", f.protocol, "deferral, halfway, binary-tree or hashed");
  mac->add_flag("--d-unknown", f.d_unknown, "Contenders do not know d");

  auto* sensors = app.add_subcommand("sensors", "Dead-sensor diagnosis over broadcast trees");
  add_common(sensors, f);
  sensors->add_option("--sensor-algo", f.sensor_algo, "deferral, binary-tree, hashed, anonymous or counting");
  sensors->add_option("--aggregate", f.aggregate, "count, idsum or both");
  sensors->add_flag("--d-unknown", f.d_unknown, "Base station does not know the dead count");

  std::string verify_algo = "all";
  std::uint64_t verify_n = 12;
  std::uint64_t verify_seeds = 50;
  auto* verify = app.add_subcommand("verify-small", "Exhaustive recovery check for n <= 12");
  verify->add_option("--algo", verify_algo, "Algorithm or 'all'");
  verify->add_option("--n", verify_n, "Largest n (every n from 1 up is checked)");
  verify->add_option("--seeds", verify_seeds, "Seeds per configuration for randomized algorithms");

  std::string tables_out;
  auto* tables = app.add_subcommand("tables", "Recomputed analytic tables next to published values");
  tables->add_option("--out", tables_out, "Output path (default stdout)");

  unsigned cal_a = 4, cal_c = 8;
  std::uint64_t cal_trials = 2000, cal_seed = 1;
  std::string cal_out;
  auto* calibrate = app.add_subcommand("calibrate-f", "Fit the estimator normalization f for (a, c)");
  calibrate->add_option("--a", cal_a, "Resolution");
  calibrate->add_option("--c", cal_c, "Subsets per experiment");
  calibrate->add_option("--trials", cal_trials, "Trials per grid point");
  calibrate->add_option("--seed", cal_seed, "Seed");
  calibrate->add_option("--out", cal_out, "Calibration records JSON to update");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_rows(f, f.algo);
    if (*mac) return run_rows(f, "mac");
    if (*sensors) return run_rows(f, "sensors");
    if (*verify) {
      std::vector<std::string> algos;
      if (verify_algo == "all") {
        algos = gt::verifiable_algorithms();
      } else {
        algos = {verify_algo};
      }
      int status = 0;
      std::printf("algorithm,n,configurations,runs,failures,worst_tests\n");
      for (const auto& a : algos) {
        for (std::uint64_t n = 1; n <= verify_n; ++n) {
          const auto r = gt::verify_small(a, n, verify_seeds);
          std::printf("%s,%llu,%llu,%llu,%llu,%llu\n", a.c_str(), static_cast<unsigned long long>(n),
                      static_cast<unsigned long long>(r.configurations), static_cast<unsigned long long>(r.runs),
                      static_cast<unsigned long long>(r.failures), static_cast<unsigned long long>(r.worst_tests));
          if (r.failures > 0) {
            std::fprintf(stderr, "%s n=%llu failed: %s\n", a.c_str(), static_cast<unsigned long long>(n),
                         r.first_failure.c_str());
            status = 1;
          }
        }
      }
      return status;
    }
    if (*tables) {
      if (tables_out.empty()) {
        gt::emit_tables(std::cout);
      } else {
        std::ofstream out(tables_out);
        if (!out) throw gt::InvalidArgument("out: cannot write " + tables_out);
        gt::emit_tables(out);
      }
      return 0;
    }
    if (*calibrate) {
      gt::CalibrationOptions opt;
      opt.trials = cal_trials;
      opt.seed = cal_seed;
      const auto rec = gt::calibrate_f(cal_a, cal_c, opt);
      std::cout << nlohmann::json(rec).dump() << '\n';
      if (!cal_out.empty()) {
        std::vector<gt::CalibrationRecord> records;
        if (std::ifstream(cal_out).good()) records = gt::load_calibrations(cal_out);
        std::erase_if(records, [&](const auto& r) { return r.a == rec.a && r.c == rec.c; });
        records.push_back(rec);
        gt::save_calibrations(cal_out, records);
      }
      return 0;
    }
  } catch (const gt::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
