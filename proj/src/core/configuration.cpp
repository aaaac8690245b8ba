#include "gt/core/configuration.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "gt/core/errors.hpp"

namespace gt {

Configuration::Configuration(std::uint64_t n, std::vector<ItemId> defectives)
    : n_(n), defectives_(std::move(defectives)) {
  std::sort(defectives_.begin(), defectives_.end());
  for (std::size_t i = 0; i < defectives_.size(); ++i) {
    if (defectives_[i].rank >= n_) {
      throw InvalidArgument("Configuration: defective " + std::to_string(defectives_[i].rank) +
                            " outside population of " + std::to_string(n_));
    }
    if (i > 0 && defectives_[i] == defectives_[i - 1]) {
      throw InvalidArgument("Configuration: duplicate defective " + std::to_string(defectives_[i].rank));
    }
  }
}

Configuration Configuration::random(std::uint64_t n, std::uint64_t d, Rng& rng) {
  if (d > n) throw InvalidArgument("Configuration::random: d exceeds n");
  std::vector<ItemId> picked;
  picked.reserve(d);
  if (d * 2 > n) {
    // Dense case: partial Fisher-Yates over all ranks.
    std::vector<std::uint64_t> all(n);
    for (std::uint64_t i = 0; i < n; ++i) all[i] = i;
    for (std::uint64_t i = 0; i < d; ++i) {
      std::swap(all[i], all[i + rng.below(n - i)]);
      picked.push_back(ItemId{all[i]});
    }
  } else {
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(d * 2);
    for (std::uint64_t j = n - d; j < n; ++j) {
      const std::uint64_t t = rng.below(j + 1);
      const std::uint64_t v = chosen.contains(t) ? j : t;
      chosen.insert(v);
      picked.push_back(ItemId{v});
    }
  }
  return Configuration(n, std::move(picked));
}

bool Configuration::is_defective(ItemId id) const {
  return std::binary_search(defectives_.begin(), defectives_.end(), id);
}

}  // namespace gt
