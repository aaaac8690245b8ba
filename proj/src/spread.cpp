#include "gt/spread.hpp"

#include <algorithm>
#include <cmath>

#include "gt/core/errors.hpp"

namespace gt {

std::uint64_t bucket_count_for(double s, std::uint64_t d_hat) {
  if (!(s > 0.0)) throw InvalidArgument("s: spread factor must be positive");
  const double raw = std::round(s * static_cast<double>(d_hat));
  return raw < 1.0 ? 1 : static_cast<std::uint64_t>(raw);
}

std::uint64_t SpreadPlan::bucket_of_local(std::uint64_t local) const {
  const std::uint64_t pos = Permutation(seed, domain).forward(local);
  const auto it = std::upper_bound(cuts.begin(), cuts.end(), pos);
  return static_cast<std::uint64_t>(it - cuts.begin()) - 1;
}

SpreadPlan spread(std::uint64_t domain, std::uint32_t epoch, std::uint64_t d_hat, double s, Rng& rng) {
  const std::uint64_t m = bucket_count_for(s, d_hat);
  SpreadPlan plan;
  plan.seed = rng();
  plan.domain = domain;
  plan.epoch = epoch;
  plan.cuts.reserve(m + 1);
  plan.cuts.push_back(0);
  std::uint64_t left = domain;
  for (std::uint64_t k = 0; k < m; ++k) {
    const std::uint64_t size = k + 1 == m ? left : rng.binomial(left, 1.0 / static_cast<double>(m - k));
    left -= size;
    plan.cuts.push_back(plan.cuts.back() + size);
  }
  return plan;
}

EpochChain::EpochChain(std::uint64_t population) { epochs_.push_back(Epoch{population, 0, false, {}}); }

void EpochChain::set_seed(std::uint64_t seed) {
  auto& e = epochs_.back();
  if (e.seeded && e.seed != seed) throw ContractViolation("EpochChain: epoch already has a permutation");
  e.seed = seed;
  e.seeded = true;
}

EpochAdvance EpochChain::advance(const std::vector<Interval>& kept) {
  auto& e = epochs_.back();
  if (!e.seeded && !kept.empty()) throw ContractViolation("EpochChain: advancing an epoch without a permutation");
  EpochAdvance out;
  out.from_epoch = current_epoch();
  std::uint64_t offset = 0;
  for (const Interval& iv : kept) {
    if (iv.empty()) continue;
    e.kept.push_back(Segment{offset, iv});
    out.carries.push_back(Carry{PermutedRange{e.seed, e.domain, iv, out.from_epoch}, offset});
    offset += iv.size();
  }
  epochs_.push_back(Epoch{offset, 0, false, {}});
  return out;
}

ItemId EpochChain::rank_of(std::uint32_t epoch, std::uint64_t position) const {
  const Epoch& e = epochs_.at(epoch);
  if (!e.seeded) throw ContractViolation("EpochChain: epoch has no permutation");
  return rank_of_local(epoch, Permutation(e.seed, e.domain).inverse(position));
}

ItemId EpochChain::rank_of_local(std::uint32_t epoch, std::uint64_t local) const {
  while (epoch > 0) {
    const Epoch& prev = epochs_.at(epoch - 1);
    auto it = std::upper_bound(prev.kept.begin(), prev.kept.end(), local,
                               [](std::uint64_t v, const Segment& s) { return v < s.offset; });
    if (it == prev.kept.begin()) throw ContractViolation("EpochChain: local index outside carried segments");
    --it;
    const std::uint64_t pos = it->positions.lo + (local - it->offset);
    if (pos >= it->positions.hi) throw ContractViolation("EpochChain: local index outside carried segments");
    local = Permutation(prev.seed, prev.domain).inverse(pos);
    --epoch;
  }
  return ItemId{local};
}

}  // namespace gt
