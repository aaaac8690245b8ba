#include "gt/applications/sensors.hpp"

#include <algorithm>
#include <string>

#include "gt/anonymous.hpp"
#include "gt/binary_tree.hpp"
#include "gt/core/errors.hpp"
#include "gt/core/permutation.hpp"
#include "gt/counting.hpp"
#include "gt/deferral.hpp"
#include "gt/estimation.hpp"
#include "gt/hashed.hpp"

namespace gt {

SensorIdScheme::SensorIdScheme(std::uint64_t n) : n_(n) {
  if (n == 0) throw InvalidArgument("n: sensor network needs at least one sensor");
  // Sums of IDs are at most 3n * n; keep them inside 64 bits.
  if (n > (std::uint64_t{1} << 30)) throw InvalidArgument("n: too many sensors for 64-bit ID sums");
}

std::optional<ItemId> SensorIdScheme::sensor(std::uint64_t id) const {
  if (id < 2 * n_ + 1 || id > 3 * n_) return std::nullopt;
  return ItemId{id - 2 * n_ - 1};
}

SensorIdScheme assign_sensor_ids(std::uint64_t n) { return SensorIdScheme(n); }

SensorNet::SensorNet(std::uint64_t n, Configuration dead_set) : ids(n), dead(std::move(dead_set)) {
  if (dead.population() != n) throw InvalidArgument("dead: configuration population differs from n");
}

BroadcastTree BroadcastTree::random(std::vector<ItemId> live, Rng& rng) {
  BroadcastTree t;
  t.parent.assign(live.size(), 0);
  for (std::size_t i = 1; i < live.size(); ++i) t.parent[i] = static_cast<std::uint32_t>(rng.below(i));
  t.live = std::move(live);
  return t;
}

std::uint64_t BroadcastTree::height() const {
  std::vector<std::uint64_t> depth(live.size(), 1);
  std::uint64_t h = live.empty() ? 0 : 1;
  for (std::size_t i = 1; i < live.size(); ++i) {
    depth[i] = depth[parent[i]] + 1;
    h = std::max(h, depth[i]);
  }
  return h;
}

std::string_view to_string(AggregateKind k) {
  switch (k) {
    case AggregateKind::Count: return "count";
    case AggregateKind::IdSum: return "idsum";
    case AggregateKind::Both: return "both";
  }
  return "?";
}

AggregateKind parse_aggregate(std::string_view text) {
  for (auto k : {AggregateKind::Count, AggregateKind::IdSum, AggregateKind::Both}) {
    if (to_string(k) == text) return k;
  }
  throw InvalidArgument("aggregate: unknown aggregate '" + std::string(text) + "'");
}

AggregateValue aggregate(const BroadcastTree& tree, const std::vector<bool>& member, const SensorIdScheme& ids,
                         AggregateKind kind) {
  const std::size_t k = tree.live.size();
  if (member.size() != k) throw InvalidArgument("member: one flag per live sensor required");
  const bool want_count = kind != AggregateKind::IdSum;
  const bool want_sum = kind != AggregateKind::Count;
  std::vector<std::uint64_t> count(k, 0);
  std::vector<std::uint64_t> sum(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (!member[i]) continue;
    if (want_count) count[i] = 1;
    if (want_sum) sum[i] = ids.id(tree.live[i]);
  }
  // Parents precede children, so one reverse sweep folds every subtree.
  for (std::size_t i = k; i-- > 1;) {
    count[tree.parent[i]] += count[i];
    sum[tree.parent[i]] += sum[i];
  }
  AggregateValue v;
  if (k > 0) {
    v.count = count[0];
    v.idsum = sum[0];
    v.messages = 2 * (k - 1) + 2;
  }
  return v;
}

TestOutcome classify_idsum(std::uint64_t expected_sum, std::uint64_t returned_sum, const SensorIdScheme& ids) {
  if (returned_sum > expected_sum) throw DataCorruption("idsum: live sensors returned more than the expected sum");
  const std::uint64_t gap = expected_sum - returned_sum;
  if (gap == 0) return TestOutcome::pure();
  if (auto who = ids.sensor(gap)) return TestOutcome::tainted(*who);
  if (gap >= ids.min_pair_sum()) return TestOutcome::impure();
  throw DataCorruption("idsum: gap " + std::to_string(gap) + " is neither an ID nor a sum of IDs");
}

SensorNetworkOracle::SensorNetworkOracle(SensorNet net, AggregateKind kind, OracleMode mode, Rng tree_rng)
    : Oracle(mode), net_(std::move(net)), kind_(kind), tree_rng_(tree_rng) {
  const bool ok = kind == AggregateKind::Both ||
                  (kind == AggregateKind::IdSum && mode == OracleMode::TernaryIdentifying) ||
                  (kind == AggregateKind::Count && !is_identifying(mode));
  if (!ok) {
    throw InvalidArgument("aggregate: " + std::string(to_string(kind)) + " cannot realize mode " +
                          std::string(to_string(mode)));
  }
  const std::uint64_t n = net_.population();
  state_.resize(n);
  for (std::uint64_t r = 0; r < n; ++r) state_[r] = ItemState::initial(ItemId{r});
  live_.reserve(n - net_.dead.defective_count());
  for (std::uint64_t r = 0; r < n; ++r) {
    if (!net_.dead.is_defective(ItemId{r})) live_.push_back(ItemId{r});
  }
}

bool SensorNetworkOracle::member(std::uint64_t sensor, const TestExpression& expr) {
  const ItemState& st = state_[sensor];
  const auto* pr = std::get_if<PermutedRange>(&expr);
  if (pr == nullptr || st.removed || st.epoch != pr->epoch) return contains(expr, ItemId{sensor}, st);
  if (!cache_valid_ || cache_seed_ != pr->seed || cache_domain_ != pr->domain || cache_epoch_ != pr->epoch) {
    const Permutation perm(pr->seed, pr->domain);
    cache_pos_.assign(state_.size(), ~std::uint64_t{0});
    for (std::size_t r = 0; r < state_.size(); ++r) {
      const ItemState& s = state_[r];
      if (!s.removed && s.epoch == pr->epoch && s.local < pr->domain) cache_pos_[r] = perm.forward(s.local);
    }
    cache_seed_ = pr->seed;
    cache_domain_ = pr->domain;
    cache_epoch_ = pr->epoch;
    cache_valid_ = true;
  }
  return pr->range.contains(cache_pos_[sensor]);
}

Oracle::Intersection SensorNetworkOracle::intersect(const TestExpression& expr) {
  const std::uint64_t n = net_.population();
  // Base station side: what a fully live T would answer.
  std::uint64_t expected_count = 0;
  std::uint64_t expected_sum = 0;
  std::vector<bool> in_t(n, false);
  for (std::uint64_t r = 0; r < n; ++r) {
    if (member(r, expr)) {
      in_t[r] = true;
      ++expected_count;
      expected_sum += net_.ids.id(ItemId{r});
    }
  }
  // Network side: one broadcast over a fresh tree, aggregated back up it.
  const BroadcastTree tree = BroadcastTree::random(live_, tree_rng_);
  std::vector<bool> flags(tree.live.size());
  for (std::size_t i = 0; i < tree.live.size(); ++i) flags[i] = in_t[tree.live[i].rank];
  const AggregateValue got = aggregate(tree, flags, net_.ids, kind_);
  messages_ += got.messages == 0 ? 2 : got.messages;

  Intersection hit;
  if (kind_ == AggregateKind::IdSum) {
    const TestOutcome t = classify_idsum(expected_sum, got.idsum, net_.ids);
    hit.count = t.value();
    hit.lone = t.identity();
    return hit;
  }
  hit.count = expected_count - got.count;
  if (kind_ == AggregateKind::Both && hit.count == 1) {
    const TestOutcome t = classify_idsum(expected_sum, got.idsum, net_.ids);
    if (t.verdict() != Verdict::Tainted) throw DataCorruption("sensors: count and idsum disagree");
    hit.lone = t.identity();
  }
  return hit;
}

void SensorNetworkOracle::advance_epoch(const EpochAdvance& advance) {
  for (std::uint64_t r = 0; r < state_.size(); ++r) state_[r] = advance_state(advance, ItemId{r}, state_[r]);
  cache_valid_ = false;
}

std::string_view to_string(SensorAlgorithm a) {
  switch (a) {
    case SensorAlgorithm::Deferral: return "deferral";
    case SensorAlgorithm::BinaryTree: return "binary-tree";
    case SensorAlgorithm::Hashed: return "hashed";
    case SensorAlgorithm::Anonymous: return "anonymous";
    case SensorAlgorithm::Counting: return "counting";
  }
  return "?";
}

SensorAlgorithm parse_sensor_algorithm(std::string_view text) {
  for (auto a : {SensorAlgorithm::Deferral, SensorAlgorithm::BinaryTree, SensorAlgorithm::Hashed,
                 SensorAlgorithm::Anonymous, SensorAlgorithm::Counting}) {
    if (to_string(a) == text) return a;
  }
  throw InvalidArgument("algorithm: unknown diagnosis algorithm '" + std::string(text) + "'");
}

namespace {

OracleMode mode_for(SensorAlgorithm a) {
  switch (a) {
    case SensorAlgorithm::Anonymous: return OracleMode::TernaryAnonymous;
    case SensorAlgorithm::Counting: return OracleMode::CountingIdentifying;
    default: return OracleMode::TernaryIdentifying;
  }
}

}  // namespace

Diagnosis diagnose_dead(const SensorNet& net, const DiagnosisOptions& options, Rng& rng) {
  SensorNetworkOracle oracle(net, options.aggregate, mode_for(options.algorithm), rng.substream(0, stream::kTree));
  Rng alg = rng.substream(0, stream::kAlgorithm);
  const std::uint64_t d = net.dead.defective_count();
  Diagnosis out;
  switch (options.algorithm) {
    case SensorAlgorithm::Deferral:
      out.dead = options.d_known
                     ? run_deferral(oracle, d, DeferralParams{}, alg).defectives
                     : run_deferral_unknown_d(oracle, EstimatorParams::shipped(), DeferralParams{}, alg).defectives;
      break;
    case SensorAlgorithm::BinaryTree: out.dead = run_binary_tree(oracle, IdentifyParams{}); break;
    case SensorAlgorithm::Hashed:
      out.dead = options.d_known ? run_hashed(oracle, d, alg).defectives : run_hashed_unknown_d(oracle, alg).defectives;
      break;
    case SensorAlgorithm::Anonymous: out.dead = an(oracle); break;
    case SensorAlgorithm::Counting:
      out.dead = options.d_known ? run_counting(oracle, d, CountingParams{}, alg).defectives
                                 : run_counting_unknown_d(oracle, CountingParams{}, alg).defectives;
      break;
  }
  std::sort(out.dead.begin(), out.dead.end());
  out.rounds = oracle.rounds();
  out.messages = oracle.messages();
  out.exact = out.dead == net.dead.defectives();
  return out;
}

}  // namespace gt
