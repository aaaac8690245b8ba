#pragma once

#include <cstdint>
#include <vector>

#include "gt/core/index_space.hpp"
#include "gt/core/oracle.hpp"
#include "gt/core/split.hpp"

namespace gt {

struct IdentifyParams {
  double p = SplitConstants::p2;
  /// Skip the test of B when A tested pure (B is then known impure).
  bool pure_skip = true;

  void validate() const;
};

/// Halfway-split tree without the pure-skip shortcut; the classic 2.885d
/// baseline.
inline IdentifyParams halfway_params() { return IdentifyParams{0.5, false}; }

/// Find every defective in `set`, which must already be known impure.
/// Needs identifying tainted results. Appends the defectives to `out`.
void identify(Oracle& oracle, const IndexSpace& space, Interval set, const IdentifyParams& params,
              std::vector<ItemId>& out);

std::vector<ItemId> identify(Oracle& oracle, Interval set, const IdentifyParams& params);

/// Whole-population test first, then identify() when impure.
std::vector<ItemId> run_binary_tree(Oracle& oracle, const IdentifyParams& params);

/// Leading term of the worst-case test count: w2 * d * lg n for even d,
/// w2 * (d - 1) * lg n for odd d, w2 = -1 / lg p2.
double worst_case_bound(std::uint64_t d, std::uint64_t n);

/// Expected tests of identify() on a set with d defectives (n >> d), for
/// d = 0..d_max. Entry d is E_d; E_0 = E_1 = 0.
std::vector<double> expected_tests_table(double p, std::uint64_t d_max);

}  // namespace gt
