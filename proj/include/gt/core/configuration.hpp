#pragma once

#include <cstdint>
#include <vector>

#include "gt/core/rng.hpp"
#include "gt/core/types.hpp"

namespace gt {

/// Hidden defective set D within a population of n items.
class Configuration {
 public:
  Configuration() = default;
  /// Sorts the defectives; throws InvalidArgument on duplicates or ids >= n.
  Configuration(std::uint64_t n, std::vector<ItemId> defectives);

  /// Uniform d-subset of [0, n) (Floyd's sampling).
  static Configuration random(std::uint64_t n, std::uint64_t d, Rng& rng);

  std::uint64_t population() const { return n_; }
  std::uint64_t defective_count() const { return defectives_.size(); }
  const std::vector<ItemId>& defectives() const { return defectives_; }
  bool is_defective(ItemId id) const;

 private:
  std::uint64_t n_ = 0;
  std::vector<ItemId> defectives_;
};

/// Calls fn(Configuration) for every d-subset of [0, n).
template <class Fn>
void for_each_configuration(std::uint64_t n, std::uint64_t d, Fn&& fn) {
  if (d > n) return;
  std::vector<std::uint64_t> idx(d);
  for (std::uint64_t i = 0; i < d; ++i) idx[i] = i;
  while (true) {
    std::vector<ItemId> items;
    items.reserve(d);
    for (auto v : idx) items.push_back(ItemId{v});
    fn(Configuration(n, std::move(items)));
    std::int64_t k = static_cast<std::int64_t>(d) - 1;
    while (k >= 0 && idx[k] == n - d + static_cast<std::uint64_t>(k)) --k;
    if (k < 0) return;
    ++idx[k];
    for (std::uint64_t j = static_cast<std::uint64_t>(k) + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace gt
