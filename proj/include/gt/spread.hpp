#pragma once

#include <cstdint>
#include <vector>

#include "gt/core/index_space.hpp"
#include "gt/core/oracle.hpp"
#include "gt/core/permutation.hpp"
#include "gt/core/rng.hpp"

namespace gt {

/// max(1, round(s * d_hat)).
std::uint64_t bucket_count_for(double s, std::uint64_t d_hat);

/// Random partition of the live items of one epoch into buckets.
///
/// Items carry dense local indices [0, domain). A keyed permutation maps each
/// local index to a position and bucket k owns the positions
/// [cuts[k], cuts[k+1]). Bucket sizes are drawn as a multinomial with equal
/// cell probabilities, so the assignment has the same law as placing every
/// item in an independent uniform bucket, while each bucket (and every prefix
/// of one) stays a single PermutedRange expression.
struct SpreadPlan {
  std::uint64_t seed = 0;
  std::uint64_t domain = 0;
  std::uint32_t epoch = 0;
  std::vector<std::uint64_t> cuts;  // bucket_count() + 1 entries

  std::uint64_t bucket_count() const { return cuts.empty() ? 0 : cuts.size() - 1; }
  Interval bucket(std::uint64_t k) const { return Interval{cuts.at(k), cuts.at(k + 1)}; }
  PermutedRange expression(Interval positions) const { return PermutedRange{seed, domain, positions, epoch}; }
  /// Bucket holding the item with this local index.
  std::uint64_t bucket_of_local(std::uint64_t local) const;
};

SpreadPlan spread(std::uint64_t domain, std::uint32_t epoch, std::uint64_t d_hat, double s, Rng& rng);

/// Controller-side record of every epoch's permutation and carry layout, used
/// to name the item at a permuted position without asking the oracle.
class EpochChain {
 public:
  explicit EpochChain(std::uint64_t population);

  std::uint32_t current_epoch() const { return static_cast<std::uint32_t>(epochs_.size() - 1); }
  std::uint64_t current_domain() const { return epochs_.back().domain; }

  /// Fix the permutation seed of the current epoch (set once per epoch).
  void set_seed(std::uint64_t seed);

  /// Close the current epoch keeping the items at the given positions (in
  /// order) and open the next one. Returns the broadcast to apply to oracle
  /// state; the new epoch's domain is the total size of `kept`.
  EpochAdvance advance(const std::vector<Interval>& kept);

  /// Item at `position` of `epoch`'s permutation.
  ItemId rank_of(std::uint32_t epoch, std::uint64_t position) const;
  /// Item whose local index in `epoch` is `local`.
  ItemId rank_of_local(std::uint32_t epoch, std::uint64_t local) const;

 private:
  struct Segment {
    std::uint64_t offset;  // first local index in the next epoch
    Interval positions;    // source positions in this epoch
  };
  struct Epoch {
    std::uint64_t domain = 0;
    std::uint64_t seed = 0;
    bool seeded = false;
    std::vector<Segment> kept;  // filled when the epoch closes
  };
  std::vector<Epoch> epochs_;
};

/// Index space over the permuted positions of one epoch.
class PermutedSpace final : public IndexSpace {
 public:
  PermutedSpace(const EpochChain& chain, std::uint32_t epoch, std::uint64_t seed, std::uint64_t domain)
      : chain_(chain), epoch_(epoch), seed_(seed), domain_(domain) {}

  TestExpression expression(Interval set) const override { return PermutedRange{seed_, domain_, set, epoch_}; }
  ItemId identity(std::uint64_t position) const override { return chain_.rank_of(epoch_, position); }

 private:
  const EpochChain& chain_;
  std::uint32_t epoch_;
  std::uint64_t seed_;
  std::uint64_t domain_;
};

}  // namespace gt
