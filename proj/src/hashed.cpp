#include "gt/hashed.hpp"

#include <algorithm>
#include <cmath>

#include "gt/core/errors.hpp"

namespace gt {

HashFn make_hash(std::uint32_t m, std::uint64_t max_id, Rng& rng) {
  if (m < 2) throw InvalidArgument("m: hashing needs at least 2 buckets");
  HashFn h;
  h.m = m;
  h.r = next_prime_above(std::max<std::uint64_t>(m, max_id));
  h.a3 = rng.between(1, h.r - 1);
  h.a2 = rng.between(1, h.r - 1);
  h.a1 = rng.between(1, h.r - 1);
  h.b = rng.between(0, h.r - 1);
  return h;
}

void HashedParams::validate() const {
  if (round_cap == 0) throw InvalidArgument("cap: round cap must be positive");
  if (!(cap_constant > 4.0)) throw InvalidArgument("c: cap constant must exceed 4");
}

HashedRound hashed_round(Oracle& oracle, std::uint64_t d_remaining, std::uint32_t epoch, Rng& rng,
                         std::uint64_t budget) {
  if (d_remaining == 0) throw InvalidArgument("d_remaining: must be >= 1");
  if (!is_identifying(oracle.mode())) throw InvalidArgument("mode: hashed search needs identifying results");
  HashedRound round;
  round.epoch = epoch;
  round.d_remaining = d_remaining;
  round.m = static_cast<std::uint32_t>(std::max<std::uint64_t>(2, 2 * d_remaining));
  const HashFn h = make_hash(round.m, oracle.population() == 0 ? 0 : oracle.population() - 1, rng);
  EpochAdvance next;
  next.from_epoch = epoch;
  for (std::uint32_t y = 0; y < round.m; ++y) {
    const HashBucket bucket{h, y, epoch};
    if (round.tests >= budget) {
      round.truncated = true;
      round.survivors.push_back(y);
      next.carries.push_back(Carry{bucket, 0});
      continue;
    }
    const TestOutcome t = oracle.test(bucket);
    ++round.tests;
    switch (t.verdict()) {
      case Verdict::Pure: break;
      case Verdict::Tainted:
        if (!t.identity()) throw ContractViolation("hashed: tainted bucket without identity");
        round.identified.push_back(*t.identity());
        break;
      case Verdict::Impure:
        round.survivors.push_back(y);
        next.carries.push_back(Carry{bucket, 0});
        break;
    }
  }
  oracle.advance_epoch(next);
  return round;
}

HashedResult run_hashed(Oracle& oracle, std::uint64_t d, Rng& rng, const HashedParams& params) {
  params.validate();
  if (d > oracle.population()) throw InvalidArgument("d: exceeds population");
  HashedResult out;
  out.attempts = 1;
  out.assumed_d = d;
  std::uint32_t epoch = 0;
  bool active = d > 0;
  while (active) {
    if (out.rounds.size() >= params.round_cap) throw ContractViolation("hashed: round cap exceeded");
    const std::uint64_t left = d - out.defectives.size();
    if (left == 0) throw ContractViolation("hashed: impure buckets remain after all defectives were found");
    oracle.set_round(static_cast<std::uint32_t>(out.rounds.size()));
    HashedRound r = hashed_round(oracle, left, epoch++, rng);
    out.defectives.insert(out.defectives.end(), r.identified.begin(), r.identified.end());
    active = !r.survivors.empty();
    out.rounds.push_back(std::move(r));
  }
  if (out.defectives.size() != d) throw ContractViolation("hashed: found a different number of defectives than d");
  return out;
}

HashedResult run_hashed_unknown_d(Oracle& oracle, Rng& rng, const HashedParams& params) {
  params.validate();
  HashedResult out;
  std::uint32_t epoch = 0;
  std::uint64_t assumed = 2;
  for (;; assumed *= 2) {
    if (assumed > (std::uint64_t{1} << 40)) throw ContractViolation("hashed: assumed d grew without bound");
    ++out.attempts;
    out.assumed_d = assumed;
    const auto budget = static_cast<std::uint64_t>(std::floor(params.cap_constant * static_cast<double>(assumed)));
    std::uint64_t spent = 0;
    std::uint64_t found = 0;
    bool done = false;
    while (spent < budget) {
      const std::uint64_t left = assumed > found ? assumed - found : 1;
      oracle.set_round(static_cast<std::uint32_t>(out.rounds.size()));
      HashedRound r = hashed_round(oracle, left, epoch++, rng, budget - spent);
      spent += r.tests;
      found += r.identified.size();
      out.defectives.insert(out.defectives.end(), r.identified.begin(), r.identified.end());
      done = r.survivors.empty();
      out.rounds.push_back(std::move(r));
      if (done) break;
    }
    if (done) return out;
  }
}

UniformityReport hash_uniformity_check(std::uint64_t r, const std::array<std::uint64_t, 4>& keys, bool full_range) {
  if (!is_prime(r) || r > 13) throw InvalidArgument("r: must be a prime <= 13");
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (keys[i] % r == keys[j] % r) throw InvalidArgument("keys: must be distinct modulo r");
    }
  }
  const std::uint64_t lo = full_range ? 0 : 1;
  const std::uint64_t cells = r * r * r * r;
  std::vector<std::uint64_t> hits(cells, 0);
  UniformityReport rep;
  rep.r = r;
  rep.full_range = full_range;
  HashFn h;
  h.r = r;
  h.m = static_cast<std::uint32_t>(r);
  for (h.a3 = lo; h.a3 < r; ++h.a3) {
    for (h.a2 = lo; h.a2 < r; ++h.a2) {
      for (h.a1 = lo; h.a1 < r; ++h.a1) {
        for (h.b = 0; h.b < r; ++h.b) {
          std::uint64_t cell = 0;
          for (auto x : keys) cell = cell * r + h.residue(x);
          ++hits[cell];
          ++rep.functions;
        }
      }
    }
  }
  rep.expected = 1.0 / static_cast<double>(cells);
  for (auto c : hits) {
    rep.max_deviation =
        std::max(rep.max_deviation, std::abs(static_cast<double>(c) / static_cast<double>(rep.functions) - rep.expected));
  }
  return rep;
}

}  // namespace gt
