#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gt/core/types.hpp"

namespace gt {

/// Ternary classification of |T ∩ D|: 0, 1, or 2+.
enum class Verdict { Pure, Tainted, Impure };

class TestOutcome {
 public:
  static TestOutcome pure() { return TestOutcome(false, 0, std::nullopt); }
  static TestOutcome tainted(std::optional<ItemId> who = std::nullopt) { return TestOutcome(false, 1, who); }
  static TestOutcome impure() { return TestOutcome(false, 2, std::nullopt); }
  static TestOutcome count(std::uint64_t k, std::optional<ItemId> who = std::nullopt) {
    return TestOutcome(true, k, who);
  }

  bool is_count() const { return counting_; }
  Verdict verdict() const {
    return value_ == 0 ? Verdict::Pure : value_ == 1 ? Verdict::Tainted : Verdict::Impure;
  }
  /// Exact count for counting outcomes; 0, 1 or 2 (meaning 2+) otherwise.
  std::uint64_t value() const { return value_; }
  const std::optional<ItemId>& identity() const { return identity_; }

  std::string describe() const;

  friend bool operator==(const TestOutcome&, const TestOutcome&) = default;

 private:
  TestOutcome(bool counting, std::uint64_t value, std::optional<ItemId> who)
      : counting_(counting), value_(value), identity_(who) {}

  bool counting_;
  std::uint64_t value_;
  std::optional<ItemId> identity_;
};

}  // namespace gt
