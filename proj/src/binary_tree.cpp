#include "gt/binary_tree.hpp"

#include <cmath>

#include "gt/core/errors.hpp"

namespace gt {

void IdentifyParams::validate() const {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("p: must lie in (0, 1)");
}

namespace {

class Identifier {
 public:
  Identifier(Oracle& oracle, const IndexSpace& space, const IdentifyParams& params, std::vector<ItemId>& out)
      : oracle_(oracle), space_(space), params_(params), out_(out) {}

  void impure(Interval set) {
    if (set.size() < 2) throw ContractViolation("identify: set of size < 2 reported impure");
    if (set.size() == 2) {
      out_.push_back(space_.identity(set.lo));
      out_.push_back(space_.identity(set.lo + 1));
      return;
    }
    const auto [a, b] = partition(set, params_.p);
    const TestOutcome ta = oracle_.test(space_.expression(a));
    switch (ta.verdict()) {
      case Verdict::Impure: impure(a); break;
      case Verdict::Tainted: tainted(ta); break;
      case Verdict::Pure:
        if (params_.pure_skip) {
          impure(b);
          return;
        }
        break;
    }
    const TestOutcome tb = oracle_.test(space_.expression(b));
    switch (tb.verdict()) {
      case Verdict::Impure: impure(b); break;
      case Verdict::Tainted:
        if (ta.verdict() == Verdict::Pure) throw ContractViolation("identify: impure set split into pure and tainted");
        tainted(tb);
        break;
      case Verdict::Pure:
        if (ta.verdict() != Verdict::Impure) throw ContractViolation("identify: impure set has a pure half and no impure half");
        break;
    }
  }

 private:
  void tainted(const TestOutcome& t) {
    if (!t.identity()) throw ContractViolation("identify: tainted result without identity");
    out_.push_back(*t.identity());
  }

  Oracle& oracle_;
  const IndexSpace& space_;
  const IdentifyParams& params_;
  std::vector<ItemId>& out_;
};

}  // namespace

void identify(Oracle& oracle, const IndexSpace& space, Interval set, const IdentifyParams& params,
              std::vector<ItemId>& out) {
  params.validate();
  Identifier(oracle, space, params, out).impure(set);
}

std::vector<ItemId> identify(Oracle& oracle, Interval set, const IdentifyParams& params) {
  std::vector<ItemId> out;
  identify(oracle, RankSpace{}, set, params, out);
  return out;
}

std::vector<ItemId> run_binary_tree(Oracle& oracle, const IdentifyParams& params) {
  params.validate();
  const Interval all{0, oracle.population()};
  const TestOutcome t = oracle.test(RangeUnion(all));
  switch (t.verdict()) {
    case Verdict::Pure: return {};
    case Verdict::Tainted:
      if (!t.identity()) throw ContractViolation("run_binary_tree: tainted result without identity");
      return {*t.identity()};
    case Verdict::Impure: break;
  }
  return identify(oracle, all, params);
}

double worst_case_bound(std::uint64_t d, std::uint64_t n) {
  if (d < 2 || n < 2) throw InvalidArgument("worst_case_bound: needs d >= 2 and n >= 2");
  const double w2 = -1.0 / std::log2(SplitConstants::p2);
  const auto dd = static_cast<double>(d % 2 == 0 ? d : d - 1);
  return w2 * dd * std::log2(static_cast<double>(n));
}

std::vector<double> expected_tests_table(double p, std::uint64_t d_max) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("p: must lie in (0, 1)");
  if (d_max < 2) throw InvalidArgument("d_max: must be >= 2");
  const double q = 1.0 - p;
  const double lp = std::log(p);
  const double lq = std::log(q);
  std::vector<double> e(d_max + 1, 0.0);
  for (std::uint64_t d = 2; d <= d_max; ++d) {
    const double dd = static_cast<double>(d);
    const double lgd = std::lgamma(dd + 1);
    double sum = 0.0;
    for (std::uint64_t i = 1; i < d; ++i) {
      const double ii = static_cast<double>(i);
      const double w = std::exp(lgd - std::lgamma(ii + 1) - std::lgamma(dd - ii + 1) + ii * lp + (dd - ii) * lq);
      sum += w * (e[i] + e[d - i]);
    }
    const double qd = std::pow(q, dd);
    const double pd = std::pow(p, dd);
    e[d] = (2.0 - qd + sum) / (1.0 - qd - pd);
  }
  return e;
}

}  // namespace gt
