#include <doctest.h>

#include <algorithm>

#include "gt/core/errors.hpp"
#include "gt/counting.hpp"
#include "gt/deferral.hpp"
#include "oracles.hpp"

using namespace gt;

namespace {

std::vector<ItemId> sorted(std::vector<ItemId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("closed forms match the case-split recurrence") {
  for (double p : {0.4715, 0.5, 0.3}) {
    const auto got = counting_tables(p);
    const auto ref = testing::counting_expectation(p, 6);
    for (unsigned t = 2; t <= 6; ++t) CHECK(got[t] == doctest::Approx(static_cast<double>(ref[t])).epsilon(1e-12));
  }
  CHECK(counting_tables(0.4715)[2] == doctest::Approx(3.0065).epsilon(1e-4));
  CHECK(counting_tables(0.5)[2] == doctest::Approx(3.0));
}

TEST_CASE("modelled total sits under the headline") {
  const TotalEstimate e = counting_total_estimate(0.58, 0.4715);
  CHECK(e.per_defective < 1.896);
  CHECK(e.truncated_mass < 0.01);
}

TEST_CASE("counting search case costs") {
  RankSpace space;
  // t = 2 split 1-1: two tests.
  {
    ConfigurationOracle o(Configuration(100, {ItemId{10}, ItemId{90}}), OracleMode::CountingIdentifying);
    std::vector<ItemId> out;
    counting_search(o, space, Interval{0, 100}, 2, 0.5, out);
    CHECK(sorted(out) == std::vector<ItemId>{ItemId{10}, ItemId{90}});
    CHECK(o.test_count() == 2);
  }
  // t = 2 split 2-0: the second part is never tested.
  {
    ConfigurationOracle o(Configuration(100, {ItemId{10}, ItemId{20}}), OracleMode::CountingIdentifying);
    std::vector<ItemId> out;
    counting_search(o, space, Interval{0, 100}, 2, 0.5, out);
    CHECK(sorted(out) == std::vector<ItemId>{ItemId{10}, ItemId{20}});
    for (const auto& e : o.ledger().entries()) CHECK_FALSE(std::get<RangeUnion>(e.expression).contains_rank(75));
  }
  // A set exactly as large as its count needs no test.
  {
    ConfigurationOracle o(Configuration(10, {ItemId{3}, ItemId{4}}), OracleMode::CountingIdentifying);
    std::vector<ItemId> out;
    counting_search(o, space, Interval{3, 5}, 2, 0.5, out);
    CHECK(o.test_count() == 0);
    CHECK(out.size() == 2);
  }
  ConfigurationOracle o(Configuration(10, {ItemId{3}}), OracleMode::CountingIdentifying);
  std::vector<ItemId> out;
  CHECK_THROWS_AS(counting_search(o, space, Interval{0, 10}, 1, 0.5, out), ContractViolation);
}

TEST_CASE("counting recovers every small configuration") {
  for (std::uint64_t n = 1; n <= 10; ++n) {
    for (std::uint64_t d = 0; d <= n; ++d) {
      std::uint64_t idx = 0;
      for_each_configuration(n, d, [&](const Configuration& cfg) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
          Rng rng = Rng(seed).substream(idx, stream::kAlgorithm);
          ConfigurationOracle o(cfg, OracleMode::CountingIdentifying);
          CHECK(sorted(run_counting(o, d, {}, rng).defectives) == cfg.defectives());
          Rng rng2 = Rng(seed).substream(idx, stream::kAlgorithm);
          ConfigurationOracle o2(cfg, OracleMode::CountingIdentifying);
          CHECK(sorted(run_counting_unknown_d(o2, {}, rng2).defectives) == cfg.defectives());
        }
        ++idx;
      });
    }
  }
}

TEST_CASE("counting needs counting identifying results") {
  Rng rng(1);
  ConfigurationOracle o(Configuration(100, {ItemId{1}}), OracleMode::TernaryIdentifying);
  CHECK_THROWS_AS(run_counting(o, 1, {}, rng), InvalidArgument);
  ConfigurationOracle none(Configuration(100, {}), OracleMode::CountingIdentifying);
  const auto r = run_counting(none, 0, {}, rng);
  CHECK(r.defectives.empty());
  CHECK(none.test_count() == r.bucket_tests);
}

TEST_CASE("counting beats ternary deferral on shared configurations") {
  double counting = 0, ternary = 0;
  for (int t = 0; t < 300; ++t) {
    Rng cr = Rng(t).substream(0, stream::kConfiguration);
    const auto cfg = Configuration::random(1 << 20, 100, cr);
    ConfigurationOracle a(cfg, OracleMode::CountingIdentifying), b(cfg, OracleMode::TernaryIdentifying);
    Rng r1 = Rng(t).substream(0, stream::kAlgorithm), r2 = r1;
    CHECK(sorted(run_counting(a, 100, {}, r1).defectives) == cfg.defectives());
    run_deferral(b, 100, {}, r2);
    counting += static_cast<double>(a.test_count());
    ternary += static_cast<double>(b.test_count());
  }
  CHECK(counting < ternary);
  CHECK(counting / 300 / 100 <= 1.896 * 1.02);
}
