#include "gt/anonymous.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "gt/core/errors.hpp"
#include "gt/core/search.hpp"
#include "gt/core/split.hpp"

namespace gt {

namespace {

/// 0, 1 or 2 (2+), whatever the oracle mode.
int level(const TestOutcome& t) { return static_cast<int>(std::min<std::uint64_t>(t.value(), 2)); }

int probe(Oracle& oracle, const RangeUnion& set) { return level(oracle.test(set)); }

ItemId resolve(Oracle& oracle, Interval tainted) {
  return tainted.size() == 1 ? ItemId{tainted.lo} : binary_search_tainted(oracle, tainted);
}

bool pairwise_disjoint(std::vector<Interval> sets) {
  std::sort(sets.begin(), sets.end(), [](Interval x, Interval y) { return x.lo < y.lo; });
  for (std::size_t i = 1; i < sets.size(); ++i) {
    if (sets[i].lo < sets[i - 1].hi) return false;
  }
  return true;
}

}  // namespace

void reduce(Oracle& oracle, Interval set, std::vector<Interval>& tainted) {
  if (set.size() < 2) throw ContractViolation("reduce: set of size < 2 cannot hold two defectives");
  if (set.size() == 2) {
    tainted.push_back(Interval{set.lo, set.lo + 1});
    tainted.push_back(Interval{set.lo + 1, set.hi});
    return;
  }
  const auto [a, b] = partition(set, SplitConstants::p2);
  const int t1 = probe(oracle, RangeUnion(a));
  if (t1 >= 2) reduce(oracle, a, tainted);
  if (t1 == 1) tainted.push_back(a);
  const int t2 = t1 == 0 ? 2 : probe(oracle, RangeUnion(b));
  if (t2 >= 2) reduce(oracle, b, tainted);
  if (t2 == 1) tainted.push_back(b);
  if (t2 == 0 && t1 < 2) throw ContractViolation("reduce: set reported impure holds fewer than two defectives");
}

std::pair<ItemId, ItemId> final2(Oracle& oracle, Interval a, Interval b) {
  if (a.empty() || b.empty()) throw ContractViolation("final2: empty tainted set");
  while (a.size() > 1 && b.size() > 1) {
    const auto [a1, a2] = partition(a, SplitConstants::p3);
    const auto [b1, b2] = partition(b, SplitConstants::p3);
    const int t1 = probe(oracle, RangeUnion(a1, b1));
    if (t1 == 0) {
      a = a2;
      b = b2;
    } else if (t1 == 1) {
      const int t2 = probe(oracle, RangeUnion(a1));
      if (t2 == 2) throw ContractViolation("final2: part of a tainted set reported impure");
      if (t2 == 0) {
        a = a2;
        b = b1;
      } else {
        a = a1;
        b = b2;
      }
    } else {
      a = a1;
      b = b1;
    }
  }
  const ItemId x = resolve(oracle, a);
  const ItemId y = resolve(oracle, b);
  return {x, y};
}

std::vector<ItemId> final3(Oracle& oracle, std::vector<Interval> sets, AnTrace* trace) {
  if (sets.size() < 3) throw InvalidArgument("final3: needs at least three tainted sets");
  for (;;) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].size() > 1) open.push_back(i);
    }
    if (open.size() < 3) break;
    std::partial_sort(open.begin(), open.begin() + 3, open.end(), [&](std::size_t x, std::size_t y) {
      if (sets[x].size() != sets[y].size()) return sets[x].size() > sets[y].size();
      return sets[x].lo < sets[y].lo;
    });
    Interval& la = sets[open[0]];
    Interval& lb = sets[open[1]];
    Interval& lc = sets[open[2]];
    const auto [a1, a2] = partition(la, SplitConstants::p4);
    const auto [b1, b2] = partition(lb, SplitConstants::p4);
    const auto [c1, c2] = partition(lc, SplitConstants::p4);

    const int t1 = probe(oracle, RangeUnion(a1, b1, c1));
    std::uint64_t extra = 0;
    if (t1 == 0) {
      la = a2, lb = b2, lc = c2;
    } else if (t1 == 1) {
      const int t2 = probe(oracle, RangeUnion(a1, b2));
      extra = 1;
      if (t2 == 0) {
        la = a2, lb = b1, lc = c2;
      } else if (t2 == 1) {
        la = a2, lb = b2, lc = c1;
      } else {
        la = a1, lb = b2, lc = c2;
      }
    } else {
      const int t2 = probe(oracle, RangeUnion(a1, b2));
      extra = 1;
      if (t2 == 0) {
        la = a2, lb = b1, lc = c1;
      } else if (t2 == 1) {
        const int t3 = probe(oracle, RangeUnion(c1));
        extra = 2;
        if (t3 == 2) throw ContractViolation("final3: part of a tainted set reported impure");
        if (t3 == 0) {
          la = a1, lb = b1, lc = c2;
        } else {
          la = a1, lb = b1, lc = c1;
        }
      } else {
        la = a1, lb = b2, lc = c1;
      }
    }
    if (trace != nullptr) {
      ++trace->final3_iterations;
      if (t1 == 1) {
        ++trace->one_tainted_paths;
        trace->one_tainted_max_extra = std::max(trace->one_tainted_max_extra, extra);
      } else if (t1 == 2) {
        ++trace->multi_tainted_paths;
        trace->multi_tainted_max_extra = std::max(trace->multi_tainted_max_extra, extra);
      }
      if (!pairwise_disjoint(sets)) trace->lists_disjoint = false;
    }
  }

  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].size() > 1) open.push_back(i);
  }
  std::vector<ItemId> out;
  out.reserve(sets.size());
  for (const Interval& s : sets) {
    if (s.size() == 1) out.push_back(ItemId{s.lo});
  }
  if (open.size() == 2) {
    const auto [x, y] = final2(oracle, sets[open[0]], sets[open[1]]);
    out.push_back(x);
    out.push_back(y);
  } else if (open.size() == 1) {
    out.push_back(binary_search_tainted(oracle, sets[open[0]]));
  }
  return out;
}

std::vector<ItemId> an(Oracle& oracle, AnTrace* trace) {
  const Interval all{0, oracle.population()};
  const TestOutcome whole = oracle.test(RangeUnion(all));
  const int t = level(whole);
  if (t == 0) return {};
  if (t == 1) return {whole.identity() ? *whole.identity() : binary_search_tainted(oracle, all)};
  std::vector<Interval> tainted;
  reduce(oracle, all, tainted);
  if (tainted.size() == 2) {
    const auto [x, y] = final2(oracle, tainted[0], tainted[1]);
    return {x, y};
  }
  return final3(oracle, std::move(tainted), trace);
}

double anonymous_worst_case_bound(std::uint64_t d, std::uint64_t n) {
  if (d < 2) throw InvalidArgument("d: bound defined for d >= 2");
  const double lg = std::log2(static_cast<double>(n));
  if (d == 2) return 1.8756 * lg;
  return (0.3307 + 0.7202 * static_cast<double>(d)) * lg;
}

}  // namespace gt
