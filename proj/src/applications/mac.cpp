#include "gt/applications/mac.hpp"

#include <algorithm>
#include <string>

#include "gt/binary_tree.hpp"
#include "gt/core/configuration.hpp"
#include "gt/core/errors.hpp"

namespace gt {

std::string_view to_string(MacProtocol p) {
  switch (p) {
    case MacProtocol::Deferral: return "deferral";
    case MacProtocol::Halfway: return "halfway";
    case MacProtocol::BinaryTree: return "binary-tree";
    case MacProtocol::Hashed: return "hashed";
  }
  return "?";
}

MacProtocol parse_mac_protocol(std::string_view text) {
  for (auto p : {MacProtocol::Deferral, MacProtocol::Halfway, MacProtocol::BinaryTree, MacProtocol::Hashed}) {
    if (to_string(p) == text) return p;
  }
  throw InvalidArgument("protocol: unknown MAC protocol '" + std::string(text) + "'");
}

MacRun mac_simulate(std::uint64_t d, const MacOptions& options, Rng& rng) {
  if (d > options.n) throw InvalidArgument("d: exceeds device population");
  Rng config_rng = rng.substream(0, stream::kConfiguration);
  Rng alg_rng = rng.substream(0, stream::kAlgorithm);
  ConfigurationOracle channel(Configuration::random(options.n, d, config_rng), OracleMode::TernaryIdentifying);

  std::vector<ItemId> sent;
  switch (options.protocol) {
    case MacProtocol::Deferral:
      sent = options.d_known ? run_deferral(channel, d, options.deferral, alg_rng).defectives
                             : run_deferral_unknown_d(channel, options.estimator, options.deferral, alg_rng).defectives;
      break;
    case MacProtocol::Halfway: sent = run_binary_tree(channel, halfway_params()); break;
    case MacProtocol::BinaryTree: sent = run_binary_tree(channel, IdentifyParams{options.tree_p, true}); break;
    case MacProtocol::Hashed:
      sent = options.d_known ? run_hashed(channel, d, alg_rng, options.hashed).defectives
                             : run_hashed_unknown_d(channel, alg_rng, options.hashed).defectives;
      break;
  }

  // A device proven to be a contender without its own success slot (one of a
  // two-item set known to collide) still has to transmit once.
  std::vector<ItemId> heard;
  for (const auto& e : channel.ledger().entries()) {
    if (e.outcome.verdict() == Verdict::Tainted && e.outcome.identity()) heard.push_back(*e.outcome.identity());
  }
  std::sort(sent.begin(), sent.end());
  std::sort(heard.begin(), heard.end());
  std::vector<ItemId> silent;
  std::set_difference(sent.begin(), sent.end(), heard.begin(), heard.end(), std::back_inserter(silent));

  MacRun run;
  run.d = d;
  run.slots = channel.test_count() + silent.size();
  run.transcript.reserve(run.slots);
  std::vector<ItemId> successes;
  for (const auto& e : channel.ledger().entries()) {
    MacSlot slot{e.expression, SlotFeedback::Idle, std::nullopt};
    switch (e.outcome.verdict()) {
      case Verdict::Pure: break;
      case Verdict::Tainted:
        slot.feedback = SlotFeedback::Success;
        slot.device = e.outcome.identity();
        if (slot.device) successes.push_back(*slot.device);
        break;
      case Verdict::Impure: slot.feedback = SlotFeedback::Collision; break;
    }
    run.transcript.push_back(std::move(slot));
  }
  // The channel has already retired these devices; each sends alone.
  for (ItemId id : silent) {
    run.transcript.push_back(MacSlot{Singleton{id}, SlotFeedback::Success, id});
    successes.push_back(id);
  }
  run.throughput = run.slots == 0 ? 0.0 : static_cast<double>(d) / static_cast<double>(run.slots);
  std::sort(successes.begin(), successes.end());
  const bool unique = std::adjacent_find(successes.begin(), successes.end()) == successes.end();
  run.delivered = unique && successes == channel.configuration().defectives() && sent == successes;
  return run;
}

}  // namespace gt
