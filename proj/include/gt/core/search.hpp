#pragma once

#include "gt/core/index_space.hpp"
#include "gt/core/oracle.hpp"

namespace gt {

/// Locate the single defective of a set known to be tainted, halving with
/// one test per level (at most ceil(lg |set|) tests). Uses only the 0/1/2+
/// result, so it works in anonymous mode; an identifying answer ends the
/// search early.
ItemId binary_search_tainted(Oracle& oracle, const IndexSpace& space, Interval set);

inline ItemId binary_search_tainted(Oracle& oracle, Interval set) {
  return binary_search_tainted(oracle, RankSpace{}, set);
}

}  // namespace gt
