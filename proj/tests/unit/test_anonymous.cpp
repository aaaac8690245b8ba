#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gt/anonymous.hpp"
#include "gt/core/errors.hpp"
#include "gt/core/split.hpp"

using namespace gt;

namespace {

std::vector<ItemId> sorted(std::vector<ItemId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<ItemId> ids(std::initializer_list<std::uint64_t> ranks) {
  std::vector<ItemId> v;
  for (auto r : ranks) v.push_back(ItemId{r});
  return v;
}

}  // namespace

TEST_CASE("AN recovers every small configuration in every mode") {
  for (auto mode : {OracleMode::TernaryAnonymous, OracleMode::TernaryIdentifying, OracleMode::CountingAnonymous}) {
    for (std::uint64_t n = 1; n <= 12; ++n) {
      for (std::uint64_t d = 0; d <= n; ++d) {
        for_each_configuration(n, d, [&](const Configuration& cfg) {
          ConfigurationOracle o(cfg, mode);
          AnTrace trace;
          CHECK(sorted(an(o, &trace)) == cfg.defectives());
          CHECK(trace.lists_disjoint);
        });
      }
    }
  }
}

TEST_CASE("AN trivial populations") {
  ConfigurationOracle none(Configuration(256, {}), OracleMode::TernaryAnonymous);
  CHECK(an(none).empty());
  CHECK(none.test_count() == 1);
  for (std::uint64_t where : {0ull, 100ull, 255ull}) {
    ConfigurationOracle one(Configuration(256, {ItemId{where}}), OracleMode::TernaryAnonymous);
    CHECK(an(one) == std::vector<ItemId>{ItemId{where}});
    CHECK(one.test_count() <= 9);
  }
}

TEST_CASE("AN is deterministic") {
  Rng r(4);
  for (int t = 0; t < 50; ++t) {
    const auto cfg = Configuration::random(1 << 12, 2 + r.below(6), r);
    ConfigurationOracle a(cfg, OracleMode::TernaryAnonymous), b(cfg, OracleMode::TernaryAnonymous);
    CHECK(sorted(an(a)) == cfg.defectives());
    an(b);
    REQUIRE(a.test_count() == b.test_count());
    for (std::size_t i = 0; i < a.ledger().entries().size(); ++i) {
      CHECK(a.ledger().entries()[i].expression == b.ledger().entries()[i].expression);
    }
  }
}

TEST_CASE("reduce isolates defectives into tainted sets") {
  ConfigurationOracle o(Configuration(64, ids({5, 40})), OracleMode::TernaryAnonymous);
  std::vector<Interval> tainted;
  reduce(o, Interval{0, 64}, tainted);
  REQUIRE(tainted.size() == 2);
  CHECK(tainted[0].contains(5) != tainted[1].contains(5));
  CHECK(tainted[0].contains(40) != tainted[1].contains(40));
  CHECK(o.test_count() == 2);

  ConfigurationOracle far(Configuration(64, ids({60, 62})), OracleMode::TernaryAnonymous);
  tainted.clear();
  reduce(far, Interval{0, 64}, tainted);
  CHECK(tainted.size() == 2);

  ConfigurationOracle single(Configuration(64, ids({3})), OracleMode::TernaryAnonymous);
  tainted.clear();
  CHECK_THROWS_AS(reduce(single, Interval{3, 4}, tainted), ContractViolation);
}

TEST_CASE("final2 on singletons costs nothing") {
  ConfigurationOracle o(Configuration(10, ids({2, 7})), OracleMode::TernaryAnonymous);
  const auto [x, y] = final2(o, Interval{2, 3}, Interval{7, 8});
  CHECK(x == ItemId{2});
  CHECK(y == ItemId{7});
  CHECK(o.test_count() == 0);
}

TEST_CASE("final2 worst case tracks 1.8756 lg n") {
  // Both sides of size 2^10; enumerate every placement on a coarse grid.
  std::uint64_t worst = 0;
  for (std::uint64_t x = 0; x < 1024; x += 7) {
    for (std::uint64_t y = 1024; y < 2048; y += 11) {
      ConfigurationOracle o(Configuration(2048, ids({x, y})), OracleMode::TernaryAnonymous);
      const auto [a, b] = final2(o, Interval{0, 1024}, Interval{1024, 2048});
      CHECK(a == ItemId{x});
      CHECK(b == ItemId{y});
      worst = std::max(worst, o.test_count());
    }
  }
  CHECK(static_cast<double>(worst) <= std::ceil(1.8756 * 10) + 4);
}

TEST_CASE("final3 follow-up tests obey the follow-up budgets") {
  Rng r(7);
  for (int t = 0; t < 300; ++t) {
    const std::uint64_t d = 3 + r.below(5);
    const auto cfg = Configuration::random(1 << 14, d, r);
    ConfigurationOracle o(cfg, OracleMode::TernaryAnonymous);
    AnTrace trace;
    CHECK(sorted(an(o, &trace)) == cfg.defectives());
    CHECK(trace.lists_disjoint);
    CHECK(trace.one_tainted_max_extra <= 1);
    CHECK(trace.multi_tainted_max_extra <= 2);
  }
}

TEST_CASE("final3 sees both follow-up paths") {
  AnTrace total;
  Rng r(11);
  for (int t = 0; t < 200; ++t) {
    const auto cfg = Configuration::random(1 << 12, 3, r);
    ConfigurationOracle o(cfg, OracleMode::TernaryAnonymous);
    AnTrace trace;
    an(o, &trace);
    total.one_tainted_paths += trace.one_tainted_paths;
    total.multi_tainted_paths += trace.multi_tainted_paths;
  }
  CHECK(total.one_tainted_paths > 0);
  CHECK(total.multi_tainted_paths > 0);
}

TEST_CASE("worst-case leading term") {
  CHECK(anonymous_worst_case_bound(2, 1024) == doctest::Approx(18.756));
  CHECK(anonymous_worst_case_bound(3, 1024) == doctest::Approx(24.913));
  CHECK(anonymous_worst_case_bound(2, 2) == doctest::Approx(1.8756));
}

TEST_CASE("d = 2 worst case at n = 2^16 on sampled configurations") {
  Rng r(12);
  std::uint64_t worst = 0;
  for (int t = 0; t < 3000; ++t) {
    const auto cfg = Configuration::random(1 << 16, 2, r);
    ConfigurationOracle o(cfg, OracleMode::TernaryAnonymous);
    CHECK(sorted(an(o)) == cfg.defectives());
    worst = std::max(worst, o.test_count());
  }
  CHECK(static_cast<double>(worst) <= 1.8756 * 16 + 6);
}
