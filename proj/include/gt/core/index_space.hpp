#pragma once

#include <cstdint>

#include "gt/core/expression.hpp"
#include "gt/core/types.hpp"

namespace gt {

/// Addressing scheme for the sets an algorithm splits: contiguous index
/// intervals mapped to concise test expressions.
class IndexSpace {
 public:
  virtual ~IndexSpace() = default;
  virtual TestExpression expression(Interval set) const = 0;
  /// Item occupying `position`; lets a search report members of a set it has
  /// proven all-defective without testing them.
  virtual ItemId identity(std::uint64_t position) const = 0;
};

/// Index = item rank.
class RankSpace final : public IndexSpace {
 public:
  TestExpression expression(Interval set) const override { return RangeUnion(set); }
  ItemId identity(std::uint64_t position) const override { return ItemId{position}; }
};

}  // namespace gt
