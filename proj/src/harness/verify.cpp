#include "gt/harness/verify.hpp"

#include <algorithm>

#include "gt/core/configuration.hpp"
#include "gt/core/errors.hpp"
#include "gt/harness/experiment.hpp"

namespace gt {

const std::vector<std::string>& verifiable_algorithms() {
  static const std::vector<std::string> algos = {"binary-tree", "halfway",  "deferral",       "deferral-unknown",
                                                 "gl-baseline", "counting", "counting-unknown", "hashed",
                                                 "hashed-unknown", "anonymous"};
  return algos;
}

bool is_randomized(const std::string& a) { return a != "binary-tree" && a != "halfway" && a != "anonymous"; }

VerifyReport verify_small(const std::string& algorithm, std::uint64_t n, std::uint64_t seeds, std::uint64_t d_min,
                          std::uint64_t d_max) {
  const auto& algos = verifiable_algorithms();
  if (std::find(algos.begin(), algos.end(), algorithm) == algos.end()) {
    throw InvalidArgument("algorithm: verify-small does not cover '" + algorithm + "'");
  }
  if (n == 0 || n > 12) throw InvalidArgument("n: verify-small needs 1 <= n <= 12");
  if (seeds == 0) throw InvalidArgument("seeds: at least one seed required");

  ExperimentConfig config;
  config.algorithm = algorithm;
  config.n = n;
  const std::uint64_t runs_per = is_randomized(algorithm) ? seeds : 1;

  VerifyReport report;
  report.algorithm = algorithm;
  report.n = n;
  for (std::uint64_t d = d_min; d <= std::min(n, d_max); ++d) {
    for_each_configuration(n, d, [&](const Configuration& cfg) {
      ++report.configurations;
      for (std::uint64_t seed = 0; seed < runs_per; ++seed) {
        ++report.runs;
        Rng rng = Rng(seed).substream(report.configurations, stream::kAlgorithm);
        std::string reason;
        try {
          const TrialRecord rec = run_on(config, cfg, rng);
          report.worst_tests = std::max(report.worst_tests, rec.tests);
          if (!rec.exact) reason = "wrong defective set";
        } catch (const Error& e) {
          reason = e.what();
        }
        if (reason.empty()) continue;
        if (report.failures++ == 0) {
          std::string set;
          for (const auto& id : cfg.defectives()) set += (set.empty() ? "" : ",") + std::to_string(id.rank);
          report.first_failure =
              "d=" + std::to_string(d) + " {" + set + "} seed=" + std::to_string(seed) + ": " + reason;
        }
      }
    });
  }
  return report;
}

}  // namespace gt
