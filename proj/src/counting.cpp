#include "gt/counting.hpp"

#include <cmath>

#include "gt/core/errors.hpp"
#include "gt/core/split.hpp"
#include "gt/spread.hpp"

namespace gt {

void CountingParams::validate() const {
  if (!(s > 0.0)) throw InvalidArgument("s: spread factor must be positive");
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("p: must lie in (0, 1)");
}

namespace {

ItemId lone(const TestOutcome& t) {
  if (!t.identity()) throw ContractViolation("counting: 1-result without identity");
  return *t.identity();
}

}  // namespace

void counting_search(Oracle& oracle, const IndexSpace& space, Interval set, std::uint64_t t, double p,
                     std::vector<ItemId>& out) {
  if (t < 2) throw ContractViolation("counting_search: needs a count of at least 2");
  if (set.size() < t) throw ContractViolation("counting_search: count exceeds set size");
  if (set.size() == t) {
    for (std::uint64_t x = set.lo; x < set.hi; ++x) out.push_back(space.identity(x));
    return;
  }
  const auto [b1, b2] = partition(set, p);
  const TestOutcome r1 = oracle.test(space.expression(b1));
  if (!r1.is_count()) throw InvalidArgument("mode: counting search needs counting results");
  const std::uint64_t t1 = r1.value();
  if (t1 > t) throw ContractViolation("counting_search: subset count exceeds set count");
  if (t1 >= 2) counting_search(oracle, space, b1, t1, p, out);
  if (t1 == 1) out.push_back(lone(r1));
  const std::uint64_t rest = t - t1;
  if (rest == 1) {
    const TestOutcome r2 = oracle.test(space.expression(b2));
    if (r2.value() != 1) throw ContractViolation("counting_search: counts do not reconcile");
    out.push_back(lone(r2));
  } else if (rest >= 2) {
    counting_search(oracle, space, b2, rest, p, out);
  }
}

CountingResult run_counting(Oracle& oracle, std::uint64_t d_hat, const CountingParams& params, Rng& rng) {
  params.validate();
  if (oracle.mode() != OracleMode::CountingIdentifying) {
    throw InvalidArgument("mode: counting search needs counting-identifying results");
  }
  EpochChain chain(oracle.population());
  const SpreadPlan plan = spread(chain.current_domain(), chain.current_epoch(), d_hat, params.s, rng);
  chain.set_seed(plan.seed);
  const PermutedSpace space(chain, plan.epoch, plan.seed, plan.domain);
  CountingResult out;
  out.buckets = plan.bucket_count();
  for (std::uint64_t k = 0; k < plan.bucket_count(); ++k) {
    const Interval bucket = plan.bucket(k);
    if (bucket.empty()) continue;
    const TestOutcome t = oracle.test(plan.expression(bucket));
    ++out.bucket_tests;
    if (t.value() == 1) {
      out.defectives.push_back(lone(t));
    } else if (t.value() >= 2) {
      counting_search(oracle, space, bucket, t.value(), params.p, out.defectives);
    }
  }
  return out;
}

CountingResult run_counting_unknown_d(Oracle& oracle, const CountingParams& params, Rng& rng) {
  if (oracle.mode() != OracleMode::CountingIdentifying) {
    throw InvalidArgument("mode: counting search needs counting-identifying results");
  }
  const TestOutcome whole = oracle.test(RangeUnion(Interval{0, oracle.population()}));
  if (whole.value() == 0) return {};
  if (whole.value() == 1) return CountingResult{{lone(whole)}, 0, 0};
  return run_counting(oracle, whole.value(), params, rng);
}

std::array<double, 7> counting_tables(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("p: must lie in (0, 1)");
  const double q = 1.0 - p;
  auto pw = [](double x, int k) { return std::pow(x, k); };
  std::array<double, 7> E{};
  E[2] = (1 + 2 * p * q) / (2 * p * q);
  E[3] = (1 + 3 * p * p * q + (3 * p * p * q + 3 * p * q * q) * E[2]) / (1 - pw(p, 3) - pw(q, 3));
  E[4] = (1 + 4 * pw(p, 3) * q + (4 * pw(p, 3) * q + 4 * p * pw(q, 3)) * E[3] + 12 * p * p * q * q * E[2]) /
         (1 - pw(p, 4) - pw(q, 4));
  E[5] = (1 + 5 * pw(p, 4) * q + (5 * pw(p, 4) * q + 5 * p * pw(q, 4)) * E[4] +
          (10 * pw(p, 3) * q * q + 10 * p * p * pw(q, 3)) * (E[2] + E[3])) /
         (1 - pw(p, 5) - pw(q, 5));
  E[6] = (1 + 6 * pw(p, 5) * q + (6 * pw(p, 5) * q + 6 * p * pw(q, 5)) * E[5] +
          (15 * pw(p, 4) * q * q + 15 * p * p * pw(q, 4)) * (E[2] + E[4]) + 40 * pw(p, 3) * pw(q, 3) * E[3]) /
         (1 - pw(p, 6) - pw(q, 6));
  return E;
}

TotalEstimate counting_total_estimate(double s, double p) {
  if (!(s > 0.0)) throw InvalidArgument("s: must be positive");
  const auto e = counting_tables(p);
  double sum = 0, mass = 0;
  for (unsigned k = 0; k <= 6; ++k) {
    sum += bucket_occupancy(k, s) * e[k];
    mass += bucket_occupancy(k, s);
  }
  return TotalEstimate{s * (1.0 + sum), 1.0 - mass};
}

}  // namespace gt
