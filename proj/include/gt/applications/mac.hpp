#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gt/core/expression.hpp"
#include "gt/core/rng.hpp"
#include "gt/deferral.hpp"
#include "gt/estimation.hpp"
#include "gt/hashed.hpp"

namespace gt {

enum class MacProtocol { Deferral, Halfway, BinaryTree, Hashed };

std::string_view to_string(MacProtocol p);
MacProtocol parse_mac_protocol(std::string_view text);

enum class SlotFeedback { Idle, Success, Collision };

struct MacSlot {
  TestExpression participants;
  SlotFeedback feedback = SlotFeedback::Idle;
  std::optional<ItemId> device;  // set on success
};

struct MacRun {
  std::uint64_t d = 0;
  std::uint64_t slots = 0;
  std::vector<MacSlot> transcript;
  double throughput = 0;  // d / slots
  /// Every contender succeeded exactly once in the transcript and the protocol
  /// reported exactly the contender set.
  bool delivered = false;
};

struct MacOptions {
  std::uint64_t n = std::uint64_t{1} << 20;  // device population
  MacProtocol protocol = MacProtocol::Deferral;
  bool d_known = true;
  DeferralParams deferral;
  EstimatorParams estimator;
  double tree_p = 0.41750778;  // binary-tree protocol split
  HashedParams hashed;
};

/// One contention episode: d of n devices hold a packet; every slot is one
/// ternary identifying test (idle / success / collision).
MacRun mac_simulate(std::uint64_t d, const MacOptions& options, Rng& rng);

}  // namespace gt
