#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gt/core/configuration.hpp"
#include "gt/core/oracle.hpp"
#include "gt/core/rng.hpp"

namespace gt {

/// Rank k -> ID 2n + 1 + k. Any sum of two or more IDs is at least 4n + 3,
/// above every single ID (at most 3n).
class SensorIdScheme {
 public:
  explicit SensorIdScheme(std::uint64_t n);

  std::uint64_t population() const { return n_; }
  std::uint64_t id(ItemId sensor) const { return 2 * n_ + 1 + sensor.rank; }
  /// Sensor transmitting `id`, if it is a valid ID.
  std::optional<ItemId> sensor(std::uint64_t id) const;
  std::uint64_t min_pair_sum() const { return 4 * n_ + 3; }

 private:
  std::uint64_t n_;
};

SensorIdScheme assign_sensor_ids(std::uint64_t n);

/// Population, the hidden dead set and the per-sensor membership state.
struct SensorNet {
  SensorIdScheme ids;
  Configuration dead;

  SensorNet(std::uint64_t n, Configuration dead_set);
  std::uint64_t population() const { return ids.population(); }
};

/// Spanning tree over the live sensors: live[0] hangs off the base station and
/// live[i] (i > 0) attaches to a uniformly chosen live[j], j < i.
struct BroadcastTree {
  std::vector<ItemId> live;
  std::vector<std::uint32_t> parent;  // parent[0] unused

  static BroadcastTree random(std::vector<ItemId> live, Rng& rng);
  std::uint64_t height() const;
};

enum class AggregateKind { Count, IdSum, Both };

std::string_view to_string(AggregateKind k);
AggregateKind parse_aggregate(std::string_view text);

struct AggregateValue {
  std::uint64_t count = 0;
  std::uint64_t idsum = 0;
  std::uint64_t messages = 0;  // down and up each tree edge, plus the base link

  friend bool operator==(const AggregateValue&, const AggregateValue&) = default;
};

/// Bottom-up fold over `tree`; member[i] tells whether tree.live[i] is in T.
AggregateValue aggregate(const BroadcastTree& tree, const std::vector<bool>& member, const SensorIdScheme& ids,
                         AggregateKind kind);

/// Ternary identifying outcome from the gap between the base station's sum of
/// IDs in T and the sum the live sensors returned.
TestOutcome classify_idsum(std::uint64_t expected_sum, std::uint64_t returned_sum, const SensorIdScheme& ids);

/// Oracle answering each test with one broadcast-and-respond round over a
/// freshly drawn tree. Membership is evaluated by every sensor, so a test
/// costs O(n).
class SensorNetworkOracle final : public Oracle {
 public:
  /// IdSum supports TernaryIdentifying, Count supports TernaryAnonymous and
  /// CountingAnonymous, Both supports every mode.
  SensorNetworkOracle(SensorNet net, AggregateKind kind, OracleMode mode, Rng tree_rng);

  std::uint64_t population() const override { return net_.population(); }
  void advance_epoch(const EpochAdvance& advance) override;

  std::uint64_t rounds() const { return test_count(); }
  std::uint64_t messages() const { return messages_; }
  const SensorNet& net() const { return net_; }

 protected:
  Intersection intersect(const TestExpression& expr) override;

 private:
  bool member(std::uint64_t sensor, const TestExpression& expr);

  SensorNet net_;
  AggregateKind kind_;
  Rng tree_rng_;
  std::vector<ItemState> state_;
  std::vector<ItemId> live_;
  std::vector<std::uint64_t> cache_pos_;
  std::uint64_t cache_seed_ = 0;
  std::uint64_t cache_domain_ = 0;
  std::uint32_t cache_epoch_ = 0;
  bool cache_valid_ = false;
  std::uint64_t messages_ = 0;
};

enum class SensorAlgorithm { Deferral, BinaryTree, Hashed, Anonymous, Counting };

std::string_view to_string(SensorAlgorithm a);
SensorAlgorithm parse_sensor_algorithm(std::string_view text);

struct DiagnosisOptions {
  SensorAlgorithm algorithm = SensorAlgorithm::Deferral;
  AggregateKind aggregate = AggregateKind::IdSum;
  /// Use the dead count as known d; otherwise the unknown-d variants run.
  bool d_known = false;
};

struct Diagnosis {
  std::vector<ItemId> dead;
  std::uint64_t rounds = 0;
  std::uint64_t messages = 0;
  bool exact = false;
};

/// Run the chosen algorithm against a sensor network oracle.
Diagnosis diagnose_dead(const SensorNet& net, const DiagnosisOptions& options, Rng& rng);

}  // namespace gt
