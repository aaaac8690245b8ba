#pragma once

#include <compare>
#include <cstdint>
#include <string_view>
#include <vector>

namespace gt {

/// Item identity: its rank in the population, in [0, n).
struct ItemId {
  std::uint64_t rank = 0;

  friend constexpr auto operator<=>(ItemId, ItemId) = default;
};

/// Half-open index interval [lo, hi).
struct Interval {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  constexpr std::uint64_t size() const { return hi > lo ? hi - lo : 0; }
  constexpr bool empty() const { return hi <= lo; }
  constexpr bool contains(std::uint64_t x) const { return lo <= x && x < hi; }

  friend constexpr bool operator==(Interval, Interval) = default;
};

enum class OracleMode {
  TernaryIdentifying,
  TernaryAnonymous,
  CountingIdentifying,
  CountingAnonymous,
};

constexpr bool is_identifying(OracleMode m) {
  return m == OracleMode::TernaryIdentifying || m == OracleMode::CountingIdentifying;
}

constexpr bool is_counting(OracleMode m) {
  return m == OracleMode::CountingIdentifying || m == OracleMode::CountingAnonymous;
}

std::string_view to_string(OracleMode m);
OracleMode parse_oracle_mode(std::string_view text);

std::vector<ItemId> to_items(const std::vector<std::uint64_t>& ranks);

}  // namespace gt
