#include "gt/core/search.hpp"

#include "gt/core/errors.hpp"
#include "gt/core/split.hpp"

namespace gt {

ItemId binary_search_tainted(Oracle& oracle, const IndexSpace& space, Interval set) {
  if (set.empty()) throw ContractViolation("binary search on an empty set");
  while (set.size() > 1) {
    const auto [a, b] = partition(set, 0.5);
    const TestOutcome t = oracle.test(space.expression(a));
    if (t.identity()) return *t.identity();
    switch (t.verdict()) {
      case Verdict::Pure: set = b; break;
      case Verdict::Tainted: set = a; break;
      case Verdict::Impure: throw ContractViolation("binary search: half of a tainted set tested impure");
    }
  }
  return space.identity(set.lo);
}

}  // namespace gt
