#include "gt/core/oracle.hpp"

#include <string>

#include "gt/core/errors.hpp"
#include "gt/core/permutation.hpp"

namespace gt {

std::string TestOutcome::describe() const {
  std::string who = identity_ ? " id=" + std::to_string(identity_->rank) : "";
  if (counting_) return "count(" + std::to_string(value_) + ")" + who;
  switch (verdict()) {
    case Verdict::Pure: return "pure";
    case Verdict::Tainted: return "tainted" + who;
    case Verdict::Impure: return "impure";
  }
  return "?";
}

std::uint64_t TestLedger::tests_in_round(std::uint32_t round) const {
  std::uint64_t k = 0;
  for (const auto& e : entries_) k += e.round == round;
  return k;
}

namespace {

std::uint64_t permuted_position(const PermutedRange& e, const ItemState& state) {
  return Permutation(e.seed, e.domain).forward(state.local);
}

}  // namespace

ItemState advance_state(const EpochAdvance& advance, ItemId id, const ItemState& state) {
  if (state.removed || state.epoch != advance.from_epoch) return state;
  for (const auto& carry : advance.carries) {
    if (!contains(carry.selector, id, state)) continue;
    ItemState next = state;
    next.epoch = state.epoch + 1;
    if (const auto* pr = std::get_if<PermutedRange>(&carry.selector)) {
      next.local = carry.offset + (permuted_position(*pr, state) - pr->range.lo);
    }
    return next;
  }
  ItemState gone = state;
  gone.removed = true;
  return gone;
}

TestOutcome classify(OracleMode mode, std::uint64_t count, std::optional<ItemId> lone) {
  const std::optional<ItemId> who = (count == 1 && is_identifying(mode)) ? lone : std::nullopt;
  if (is_counting(mode)) return TestOutcome::count(count, who);
  if (count == 0) return TestOutcome::pure();
  if (count == 1) return TestOutcome::tainted(who);
  return TestOutcome::impure();
}

TestOutcome Oracle::test(const TestExpression& expr) {
  if (serialized_size(expr) > kMaxExpressionBytes) {
    throw ContractViolation("test expression exceeds " + std::to_string(kMaxExpressionBytes) + " bytes");
  }
  const Intersection hit = intersect(expr);
  TestOutcome outcome = classify(mode_, hit.count, hit.lone);
  ledger_.append(LedgerEntry{expr, outcome, round_});
  return outcome;
}

ConfigurationOracle::ConfigurationOracle(Configuration config, OracleMode mode) : Oracle(mode) {
  reset(std::move(config));
}

void ConfigurationOracle::reset(Configuration config) {
  config_ = std::move(config);
  tracked_.clear();
  tracked_.reserve(config_.defective_count());
  for (ItemId id : config_.defectives()) tracked_.push_back(Tracked{id, ItemState::initial(id)});
  clear_ledger();
}

bool ConfigurationOracle::member(Tracked& t, const TestExpression& expr) {
  const auto* pr = std::get_if<PermutedRange>(&expr);
  if (pr == nullptr || t.state.removed) return contains(expr, t.id, t.state);
  if (t.state.epoch != pr->epoch) return contains(expr, t.id, t.state);  // raises StaleExpression
  if (t.state.local >= pr->domain) return false;
  if (!t.cache_valid || t.cache_seed != pr->seed || t.cache_domain != pr->domain) {
    t.cache_seed = pr->seed;
    t.cache_domain = pr->domain;
    t.cache_pos = permuted_position(*pr, t.state);
    t.cache_valid = true;
  }
  return pr->range.contains(t.cache_pos);
}

Oracle::Intersection ConfigurationOracle::intersect(const TestExpression& expr) {
  Intersection hit;
  for (auto& t : tracked_) {
    if (member(t, expr)) {
      ++hit.count;
      hit.lone = t.id;
    }
  }
  if (hit.count != 1) hit.lone.reset();
  return hit;
}

void ConfigurationOracle::advance_epoch(const EpochAdvance& advance) {
  for (auto& t : tracked_) {
    t.state = advance_state(advance, t.id, t.state);
    t.cache_valid = false;
  }
}

}  // namespace gt
