#include "gt/deferral.hpp"

#include <cmath>
#include <optional>

#include "gt/binary_tree.hpp"
#include "gt/core/errors.hpp"
#include "gt/core/split.hpp"
#include "gt/spread.hpp"

namespace gt {

void DeferralParams::validate() const {
  if (!(s > 0.0)) throw InvalidArgument("s: spread factor must be positive");
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("p: must lie in (0, 1)");
}

namespace {

class BucketSearcher {
 public:
  BucketSearcher(Oracle& oracle, const IndexSpace& space, double p, DeferralState& state)
      : oracle_(oracle), space_(space), p_(p), state_(state) {}

  void impure(Interval set) {
    if (set.size() < 2) throw ContractViolation("bucket_search: set of size < 2 reported impure");
    if (set.size() == 2) {
      state_.identified.push_back(space_.identity(set.lo));
      state_.identified.push_back(space_.identity(set.lo + 1));
      return;
    }
    const auto [a, b] = partition(set, p_);
    const TestOutcome ta = oracle_.test(space_.expression(a));
    switch (ta.verdict()) {
      case Verdict::Pure: impure(b); return;
      case Verdict::Impure:
        impure(a);
        state_.deferred.push_back(b);
        return;
      case Verdict::Tainted: found(ta); break;
    }
    const TestOutcome tb = oracle_.test(space_.expression(b));
    switch (tb.verdict()) {
      case Verdict::Pure: throw ContractViolation("bucket_search: impure set split into tainted and pure");
      case Verdict::Tainted: found(tb); break;
      case Verdict::Impure: impure(b); break;
    }
  }

 private:
  void found(const TestOutcome& t) {
    if (!t.identity()) throw ContractViolation("bucket_search: tainted result without identity");
    state_.identified.push_back(*t.identity());
  }

  Oracle& oracle_;
  const IndexSpace& space_;
  double p_;
  DeferralState& state_;
};

class DeferralRun {
 public:
  DeferralRun(Oracle& oracle, const DeferralParams& params, Rng& rng)
      : oracle_(oracle), params_(params), rng_(rng), chain_(oracle.population()) {
    params_.validate();
    if (!is_identifying(oracle.mode())) throw InvalidArgument("mode: deferral needs identifying results");
  }

  DeferralResult run(std::optional<std::uint64_t> known_d, double d_hat) {
    for (std::uint32_t round = 0;; ++round) {
      std::uint64_t d_round = 0;
      if (known_d) {
        d_round = *known_d - result_.defectives.size();
      } else {
        d_round = static_cast<std::uint64_t>(std::max(1.0, std::round(d_hat)));
      }
      const DeferralState state = run_round(round, d_round);
      const std::uint64_t found = state.identified.size();
      result_.defectives.insert(result_.defectives.end(), state.identified.begin(), state.identified.end());
      if (known_d) {
        if (result_.defectives.size() > *known_d) throw ContractViolation("deferral: more defectives than d");
        if (result_.defectives.size() == *known_d) break;
        if (state.deferred.empty()) throw ContractViolation("deferral: defectives remain but nothing was deferred");
      } else if (state.deferred.empty()) {
        break;
      }
      oracle_.advance_epoch(chain_.advance(state.deferred));
      d_hat = std::max(1.0, std::round(d_hat - static_cast<double>(found)));
    }
    return std::move(result_);
  }

 private:
  DeferralState run_round(std::uint32_t round, std::uint64_t d_round) {
    oracle_.set_round(round);
    const std::uint64_t before = oracle_.test_count();
    const SpreadPlan plan = spread(chain_.current_domain(), chain_.current_epoch(), d_round, params_.s, rng_);
    chain_.set_seed(plan.seed);
    const PermutedSpace space(chain_, plan.epoch, plan.seed, plan.domain);

    RoundTrace rt;
    rt.round = round;
    rt.d_hat = d_round;
    rt.items = plan.domain;
    rt.buckets = plan.bucket_count();

    DeferralState state;
    for (std::uint64_t k = 0; k < plan.bucket_count(); ++k) {
      const Interval bucket = plan.bucket(k);
      if (bucket.empty()) continue;
      const TestOutcome t = oracle_.test(plan.expression(bucket));
      ++rt.bucket_tests;
      const std::uint64_t tests_before = oracle_.test_count();
      const std::size_t ids_before = state.identified.size();
      const std::size_t deferred_before = state.deferred.size();
      switch (t.verdict()) {
        case Verdict::Pure: break;
        case Verdict::Tainted:
          if (!t.identity()) throw ContractViolation("deferral: tainted bucket without identity");
          state.identified.push_back(*t.identity());
          break;
        case Verdict::Impure:
          if (params_.defer) {
            bucket_search(oracle_, space, bucket, params_.p, state);
          } else {
            identify(oracle_, space, bucket, IdentifyParams{params_.p, true}, state.identified);
          }
          break;
      }
      if (params_.trace) {
        BucketTrace bt;
        bt.round = round;
        bt.epoch = plan.epoch;
        bt.seed = plan.seed;
        bt.domain = plan.domain;
        bt.positions = bucket;
        bt.outcome = t;
        bt.search_tests = oracle_.test_count() - tests_before;
        bt.identified = state.identified.size() - ids_before;
        bt.deferred.assign(state.deferred.begin() + static_cast<std::ptrdiff_t>(deferred_before), state.deferred.end());
        result_.buckets.push_back(std::move(bt));
      }
    }
    rt.search_tests = oracle_.test_count() - before - rt.bucket_tests;
    rt.identified = state.identified.size();
    for (const Interval& iv : state.deferred) rt.deferred_items += iv.size();
    result_.rounds.push_back(rt);
    return state;
  }

  Oracle& oracle_;
  DeferralParams params_;
  Rng& rng_;
  EpochChain chain_;
  DeferralResult result_;
};

}  // namespace

void bucket_search(Oracle& oracle, const IndexSpace& space, Interval bucket, double p, DeferralState& state) {
  BucketSearcher(oracle, space, p, state).impure(bucket);
}

DeferralResult run_deferral(Oracle& oracle, std::uint64_t d, const DeferralParams& params, Rng& rng) {
  if (d > oracle.population()) throw InvalidArgument("d: exceeds population");
  return DeferralRun(oracle, params, rng).run(d, static_cast<double>(d));
}

DeferralResult run_deferral_estimated(Oracle& oracle, double d_hat, const DeferralParams& params, Rng& rng) {
  if (!(d_hat >= 0.0)) throw InvalidArgument("d_hat: must be non-negative");
  return DeferralRun(oracle, params, rng).run(std::nullopt, d_hat);
}

}  // namespace gt
