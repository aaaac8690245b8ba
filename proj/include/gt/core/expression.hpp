#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gt/core/hash_fn.hpp"
#include "gt/core/types.hpp"

namespace gt {

/// Union of up to three disjoint rank intervals.
struct RangeUnion {
  std::array<Interval, 3> parts{};
  std::uint8_t count = 0;

  RangeUnion() = default;
  explicit RangeUnion(Interval a);
  RangeUnion(Interval a, Interval b);
  RangeUnion(Interval a, Interval b, Interval c);

  std::uint64_t size() const;
  bool contains_rank(std::uint64_t rank) const;
};

/// Items whose hash value equals `target` under `fn`, among items alive in
/// `epoch`.
struct HashBucket {
  HashFn fn;
  std::uint32_t target = 0;
  std::uint32_t epoch = 0;
};

struct Singleton {
  ItemId id;
};

/// Items included independently with probability 2^(-level/denominator),
/// decided by a keyed PRF of the item rank.
struct PrfSubset {
  std::uint64_t seed = 0;
  std::uint32_t level = 1;
  std::uint32_t denominator = 1;
  std::uint32_t epoch = 0;

  double inclusion_probability() const;
  /// PRF values strictly below this threshold are members.
  std::uint64_t threshold() const;
};

/// Items alive in `epoch` whose keyed-permutation position of their local
/// index falls in `range`. Spreading and in-bucket splits use this form.
struct PermutedRange {
  std::uint64_t seed = 0;
  std::uint64_t domain = 0;
  Interval range;
  std::uint32_t epoch = 0;
};

using TestExpression = std::variant<RangeUnion, HashBucket, Singleton, PrfSubset, PermutedRange>;

/// Per-item state carried by every item: O(1) words.
struct ItemState {
  std::uint32_t epoch = 0;
  std::uint64_t local = 0;  // dense index among items alive in `epoch`
  bool removed = false;

  static ItemState initial(ItemId id) { return ItemState{0, id.rank, false}; }
};

/// Membership of `id` (with state `state`) in the set described by `expr`.
/// Throws StaleExpression when an epoch-scoped expression meets a live item
/// from a different epoch.
bool contains(const TestExpression& expr, ItemId id, const ItemState& state);

// Binary layout: tag byte followed by fixed little-endian fields, see
// docs/expression-format.md.
inline constexpr std::size_t kMaxExpressionBytes = 64;

std::vector<std::byte> serialize(const TestExpression& expr);
TestExpression deserialize(std::span<const std::byte> bytes);
std::size_t serialized_size(const TestExpression& expr);

nlohmann::json to_json(const TestExpression& expr);
TestExpression expression_from_json(const nlohmann::json& j);

bool operator==(const RangeUnion& a, const RangeUnion& b);
bool operator==(const HashBucket& a, const HashBucket& b);
bool operator==(const Singleton& a, const Singleton& b);
bool operator==(const PrfSubset& a, const PrfSubset& b);
bool operator==(const PermutedRange& a, const PermutedRange& b);

}  // namespace gt
