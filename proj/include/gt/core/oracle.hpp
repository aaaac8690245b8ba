#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gt/core/configuration.hpp"
#include "gt/core/expression.hpp"
#include "gt/core/outcome.hpp"
#include "gt/core/types.hpp"

namespace gt {

struct LedgerEntry {
  TestExpression expression;
  TestOutcome outcome;
  std::uint32_t round = 0;
};

/// Append-only audit trail of oracle queries.
class TestLedger {
 public:
  void append(LedgerEntry entry) { entries_.push_back(std::move(entry)); }
  void clear() { entries_.clear(); }

  std::uint64_t test_count() const { return entries_.size(); }
  const std::vector<LedgerEntry>& entries() const { return entries_; }
  /// Number of entries whose round index equals `round`.
  std::uint64_t tests_in_round(std::uint32_t round) const;

 private:
  std::vector<LedgerEntry> entries_;
};

/// State broadcast closing an epoch: every live item of `from_epoch` that
/// matches a carry selector moves to epoch + 1 (first matching carry wins);
/// every other live item of that epoch is marked removed.
struct Carry {
  TestExpression selector;
  /// New local index base. For PermutedRange selectors the item's new local
  /// index is offset + (position - range.lo); other selectors keep it.
  std::uint64_t offset = 0;
};

struct EpochAdvance {
  std::uint32_t from_epoch = 0;
  std::vector<Carry> carries;
};

ItemState advance_state(const EpochAdvance& advance, ItemId id, const ItemState& state);

/// Classify an exact intersection count into the outcome reported in `mode`.
TestOutcome classify(OracleMode mode, std::uint64_t count, std::optional<ItemId> lone);

/// Query-counting test oracle. Every call to test() appends one ledger entry;
/// the hidden configuration is never exposed through this interface.
class Oracle {
 public:
  explicit Oracle(OracleMode mode) : mode_(mode) {}
  virtual ~Oracle() = default;
  Oracle(const Oracle&) = delete;
  Oracle& operator=(const Oracle&) = delete;

  OracleMode mode() const { return mode_; }
  virtual std::uint64_t population() const = 0;

  TestOutcome test(const TestExpression& expr);
  virtual void advance_epoch(const EpochAdvance& advance) = 0;

  const TestLedger& ledger() const { return ledger_; }
  std::uint64_t test_count() const { return ledger_.test_count(); }

  void set_round(std::uint32_t round) { round_ = round; }
  std::uint32_t round() const { return round_; }

 protected:
  struct Intersection {
    std::uint64_t count = 0;
    std::optional<ItemId> lone;  // set when count == 1
  };
  virtual Intersection intersect(const TestExpression& expr) = 0;
  void clear_ledger() {
    ledger_.clear();
    round_ = 0;
  }

 private:
  OracleMode mode_;
  TestLedger ledger_;
  std::uint32_t round_ = 0;
};

/// Oracle over an explicit configuration. Only defective items can change an
/// outcome, so item state is materialized for the defectives alone; a test
/// costs O(d) membership evaluations regardless of n.
class ConfigurationOracle final : public Oracle {
 public:
  ConfigurationOracle(Configuration config, OracleMode mode);

  std::uint64_t population() const override { return config_.population(); }
  void advance_epoch(const EpochAdvance& advance) override;

  /// Replace the configuration and clear ledger and item state.
  void reset(Configuration config);
  const Configuration& configuration() const { return config_; }

 protected:
  Intersection intersect(const TestExpression& expr) override;

 private:
  struct Tracked {
    ItemId id;
    ItemState state;
    // Cached forward permutation position for the current (seed, domain).
    std::uint64_t cache_seed = 0;
    std::uint64_t cache_domain = 0;
    std::uint64_t cache_pos = 0;
    bool cache_valid = false;
  };
  bool member(Tracked& t, const TestExpression& expr);

  Configuration config_;
  std::vector<Tracked> tracked_;
};

}  // namespace gt
