#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gt/core/configuration.hpp"
#include "gt/core/errors.hpp"
#include "gt/core/expression.hpp"
#include "gt/core/oracle.hpp"
#include "gt/core/permutation.hpp"
#include "gt/core/rng.hpp"
#include "gt/core/search.hpp"
#include "gt/core/split.hpp"
#include "gt/spread.hpp"
#include "oracles.hpp"

using namespace gt;

TEST_CASE("rng streams are reproducible and substreams differ") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
  const Rng root(9);
  Rng s1 = root.substream(0, stream::kConfiguration);
  Rng s2 = root.substream(0, stream::kAlgorithm);
  Rng s3 = root.substream(1, stream::kConfiguration);
  CHECK(s1() != s2());
  CHECK(s1() != s3());
  Rng r(3);
  for (int i = 0; i < 1000; ++i) {
    CHECK(r.below(7) < 7);
    const auto v = r.between(5, 9);
    CHECK(v >= 5);
    CHECK(v <= 9);
  }
}

TEST_CASE("binomial draws have the right mean") {
  Rng r(5);
  for (auto [n, p] : {std::pair{20ull, 0.3}, std::pair{100000ull, 0.01}, std::pair{1000000ull, 0.5}}) {
    double sum = 0;
    const int k = 4000;
    for (int i = 0; i < k; ++i) {
      const auto v = r.binomial(n, p);
      CHECK(v <= n);
      sum += static_cast<double>(v);
    }
    const double mean = static_cast<double>(n) * p;
    const double sd = std::sqrt(mean * (1 - p) / k);
    CHECK(std::fabs(sum / k - mean) < 5 * sd + 1e-9);
  }
}

TEST_CASE("permutation is a bijection with a working inverse") {
  for (std::uint64_t domain : {1ull, 2ull, 3ull, 17ull, 64ull, 1000ull, 4099ull}) {
    Permutation perm(77 + domain, domain);
    std::vector<bool> seen(domain, false);
    for (std::uint64_t x = 0; x < domain; ++x) {
      const auto y = perm.forward(x);
      REQUIRE(y < domain);
      CHECK_FALSE(seen[y]);
      seen[y] = true;
      CHECK(perm.inverse(y) == x);
    }
  }
  Permutation big(1, std::uint64_t{1} << 40);
  for (std::uint64_t x : {0ull, 1ull, 123456789ull, (1ull << 40) - 1}) CHECK(big.inverse(big.forward(x)) == x);
}

TEST_CASE("configuration sampling and enumeration") {
  Rng r(11);
  const auto c = Configuration::random(1000, 30, r);
  CHECK(c.defective_count() == 30);
  CHECK(std::is_sorted(c.defectives().begin(), c.defectives().end()));
  CHECK_THROWS_AS(Configuration(5, {ItemId{1}, ItemId{1}}), InvalidArgument);
  CHECK_THROWS_AS(Configuration(5, {ItemId{5}}), InvalidArgument);
  std::uint64_t count = 0;
  for_each_configuration(6, 3, [&](const Configuration&) { ++count; });
  CHECK(count == 20);
}

TEST_CASE("partition sizes") {
  auto [a, b] = partition(Interval{0, 10}, SplitConstants::p2);
  CHECK(a == Interval{0, 4});
  CHECK(b == Interval{4, 10});
  auto [c, d] = partition(Interval{5, 7}, 0.01);
  CHECK(c.size() == 1);
  CHECK(d.size() == 1);
  auto [e, f] = partition(Interval{0, 3}, 0.99);
  CHECK(e.size() == 2);
  CHECK(f.size() == 1);
  CHECK_THROWS_AS(partition(Interval{3, 4}, 0.5), DegenerateSplit);
  CHECK_THROWS_AS(partition(Interval{0, 8}, 1.0), DegenerateSplit);
}

TEST_CASE("split roots agree with Newton's method") {
  for (int k = 1; k <= 6; ++k) CHECK(solve_split_root(k) == doctest::Approx(testing::split_root_newton(k)).epsilon(1e-11));
  CHECK(std::fabs(solve_split_root(2) - SplitConstants::p2) < 1e-7);
  CHECK(std::fabs(solve_split_root(3) - SplitConstants::p3) < 1e-7);
  CHECK(std::fabs(solve_split_root(4) - SplitConstants::p4) < 1e-7);
}

TEST_CASE("information lower bound") {
  CHECK(info_lower_bound(10, 0) == doctest::Approx(0.0));
  CHECK(info_lower_bound(10, 2) == doctest::Approx(std::log2(45.0)));
  CHECK(info_lower_bound(1 << 20, 100) == doctest::Approx(info_lower_bound(1 << 20, (1 << 20) - 100)));
}

namespace {

std::vector<TestExpression> sample_expressions() {
  HashFn h{3, 5, 7, 11, 1000003, 17};
  return {RangeUnion(Interval{0, 10}),
          RangeUnion(Interval{0, 3}, Interval{7, 9}, Interval{20, 1u << 20}),
          HashBucket{h, 4, 2},
          Singleton{ItemId{123456}},
          PrfSubset{99, 7, 4, 1},
          PermutedRange{0xdeadbeef, 1u << 20, Interval{100, 5000}, 3}};
}

}  // namespace

TEST_CASE("expression encodings round trip within the size limit") {
  const std::size_t sizes[] = {50, 50, 53, 9, 21, 37};
  std::size_t k = 0;
  for (const auto& e : sample_expressions()) {
    const auto bytes = serialize(e);
    CHECK(bytes.size() == sizes[k++]);
    CHECK(bytes.size() == serialized_size(e));
    CHECK(bytes.size() <= kMaxExpressionBytes);
    CHECK(deserialize(bytes) == e);
    CHECK(expression_from_json(to_json(e)) == e);
  }
}

TEST_CASE("corrupt encodings are rejected") {
  auto bytes = serialize(TestExpression{Singleton{ItemId{3}}});
  auto cut = bytes;
  cut.pop_back();
  CHECK_THROWS_AS(deserialize(cut), DataCorruption);
  auto extra = bytes;
  extra.push_back(std::byte{0});
  CHECK_THROWS_AS(deserialize(extra), DataCorruption);
  auto tag = bytes;
  tag[0] = std::byte{42};
  CHECK_THROWS_AS(deserialize(tag), DataCorruption);
  CHECK_THROWS_AS(deserialize(std::span<const std::byte>{}), DataCorruption);
}

TEST_CASE("PRF subsets include items at the stated rate") {
  const PrfSubset e{12345, 3, 1, 0};
  std::uint64_t hits = 0;
  const std::uint64_t n = 200000;
  for (std::uint64_t r = 0; r < n; ++r) hits += contains(e, ItemId{r}, ItemState::initial(ItemId{r}));
  CHECK(static_cast<double>(hits) / n == doctest::Approx(0.125).epsilon(0.03));
  CHECK(PrfSubset{1, 5, 4, 0}.inclusion_probability() == doctest::Approx(std::exp2(-1.25)));
}

TEST_CASE("epoch-scoped expressions reject stale items") {
  const ItemState old{0, 5, false};
  CHECK_THROWS_AS(contains(PermutedRange{1, 10, Interval{0, 10}, 1}, ItemId{5}, old), StaleExpression);
  const ItemState gone{0, 5, true};
  CHECK_FALSE(contains(PermutedRange{1, 10, Interval{0, 10}, 1}, ItemId{5}, gone));
  CHECK(contains(RangeUnion(Interval{0, 10}), ItemId{5}, ItemState{3, 0, false}));
}

TEST_CASE("classification per oracle mode") {
  CHECK(classify(OracleMode::TernaryIdentifying, 1, ItemId{4}).identity() == ItemId{4});
  CHECK_FALSE(classify(OracleMode::TernaryAnonymous, 1, ItemId{4}).identity().has_value());
  CHECK(classify(OracleMode::TernaryAnonymous, 5, std::nullopt).value() == 2);
  CHECK(classify(OracleMode::CountingAnonymous, 5, std::nullopt).value() == 5);
  CHECK(classify(OracleMode::CountingIdentifying, 1, ItemId{2}).identity() == ItemId{2});
  CHECK(classify(OracleMode::CountingIdentifying, 0, std::nullopt).verdict() == Verdict::Pure);
}

TEST_CASE("oracle ledger records every test with its round") {
  ConfigurationOracle o(Configuration(16, {ItemId{3}, ItemId{9}}), OracleMode::TernaryIdentifying);
  CHECK(o.test(RangeUnion(Interval{0, 16})).verdict() == Verdict::Impure);
  o.set_round(1);
  const auto t = o.test(RangeUnion(Interval{0, 8}));
  CHECK(t.verdict() == Verdict::Tainted);
  CHECK(t.identity() == ItemId{3});
  CHECK(o.test(Singleton{ItemId{4}}).verdict() == Verdict::Pure);
  CHECK(o.test_count() == 3);
  CHECK(o.ledger().tests_in_round(0) == 1);
  CHECK(o.ledger().tests_in_round(1) == 2);
}

TEST_CASE("sparse oracle agrees with a full scan across epochs") {
  Rng r(21);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint64_t n = 300 + r.below(300);
    const auto cfg = Configuration::random(n, 1 + r.below(12), r);
    ConfigurationOracle fast(cfg, OracleMode::CountingIdentifying);
    testing::NaiveOracle slow(cfg, OracleMode::CountingIdentifying);
    EpochChain chain(n);
    for (int epoch = 0; epoch < 4; ++epoch) {
      const std::uint64_t domain = chain.current_domain();
      if (domain < 2) break;
      const auto plan = spread(domain, chain.current_epoch(), 1 + r.below(8), 0.8, r);
      chain.set_seed(plan.seed);
      for (std::uint64_t k = 0; k < plan.bucket_count(); ++k) {
        const auto e = plan.expression(plan.bucket(k));
        CHECK(fast.test(e) == slow.test(e));
      }
      for (int q = 0; q < 10; ++q) {
        const std::uint64_t lo = r.below(domain);
        const std::uint64_t hi = lo + 1 + r.below(domain - lo);
        const TestExpression e = plan.expression(Interval{lo, hi});
        CHECK(fast.test(e) == slow.test(e));
        const TestExpression p = PrfSubset{r(), static_cast<std::uint32_t>(1 + r.below(4)), 1, chain.current_epoch()};
        CHECK(fast.test(p) == slow.test(p));
      }
      // Keep a random subset of buckets.
      std::vector<Interval> kept;
      for (std::uint64_t k = 0; k < plan.bucket_count(); ++k) {
        if (r.below(2) == 0 && !plan.bucket(k).empty()) kept.push_back(plan.bucket(k));
      }
      const auto adv = chain.advance(kept);
      fast.advance_epoch(adv);
      slow.advance_epoch(adv);
      // The chain names the same items the oracle state carries.
      for (std::uint64_t rank = 0; rank < n; ++rank) {
        const auto& st = slow.states()[rank];
        if (!st.removed && st.epoch == chain.current_epoch()) {
          CHECK(chain.rank_of_local(chain.current_epoch(), st.local) == ItemId{rank});
        }
      }
    }
  }
}

TEST_CASE("binary search finds the lone defective") {
  for (auto mode : {OracleMode::TernaryIdentifying, OracleMode::TernaryAnonymous}) {
    for (std::uint64_t where = 0; where < 37; ++where) {
      ConfigurationOracle o(Configuration(37, {ItemId{where}}), mode);
      CHECK(binary_search_tainted(o, Interval{0, 37}) == ItemId{where});
      CHECK(o.test_count() <= 6);
    }
  }
  ConfigurationOracle o(Configuration(8, {ItemId{1}, ItemId{2}}), OracleMode::TernaryAnonymous);
  CHECK_THROWS_AS(binary_search_tainted(o, Interval{0, 8}), ContractViolation);
}

TEST_CASE("spread buckets partition the domain") {
  Rng r(8);
  const auto plan = spread(1000, 0, 10, 0.8, r);
  CHECK(plan.bucket_count() == bucket_count_for(0.8, 10));
  CHECK(plan.cuts.front() == 0);
  CHECK(plan.cuts.back() == 1000);
  CHECK(std::is_sorted(plan.cuts.begin(), plan.cuts.end()));
  Permutation perm(plan.seed, plan.domain);
  for (std::uint64_t local = 0; local < 1000; ++local) {
    CHECK(plan.bucket(plan.bucket_of_local(local)).contains(perm.forward(local)));
  }
  CHECK(bucket_count_for(0.8, 0) == 1);
  CHECK(bucket_count_for(0.8, 100) == 80);
}
