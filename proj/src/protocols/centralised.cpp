#include "detail.hpp"
#include "judgebench/error.hpp"

namespace judgebench::protocols {

// J0 leads. For each pair (J_{2p-1}, J_{2p}) the first member shares its
// decision two ways and the second member combines by OT on its own decision,
// leaving XOR shares of the pair's AND and OR split between the two. All four
// share bits go to the leader, who counts and announces.
RunRecord run_centralised(const DecisionVector& decisions, const CentralisedRandomness& randomness,
                          const RunOptions& options) {
  detail::check_judge_count(decisions, 3);
  const std::size_t n = decisions.size() / 2;
  if (randomness.pairs.size() != n) {
    throw ParameterError("need randomness for " + std::to_string(n) + " pairs, got " +
                         std::to_string(randomness.pairs.size()));
  }

  RunRecord rec;
  rec.protocol = ProtocolId::Centralised;
  rec.n = n;
  rec.decisions = decisions;
  std::vector<std::vector<LabeledValue>> own(decisions.size());

  struct PairShares {
    int lo_and, lo_or, hi_and, hi_or;
  };
  std::vector<PairShares> held(n);

  int after = 1;
  for (std::size_t p = 1; p <= n; ++p) {
    const auto& pr = randomness.pairs[p - 1];
    const int lo = static_cast<int>(2 * p - 1);
    const int hi = static_cast<int>(2 * p);
    const ShareSet s = make_share_set(decisions[lo], pr.and_share, pr.or_share);
    own[lo] = {{"and_share", pr.and_share}, {"or_share", pr.or_share}};
    rec.randomness.push_back({"p" + std::to_string(p) + ".and_share", pr.and_share});
    rec.randomness.push_back({"p" + std::to_string(p) + ".or_share", pr.or_share});
    if (options.ot == OtMode::Transcript) {
      for (const auto* pkg : {&pr.ot_and, &pr.ot_or}) {
        rec.environment.insert(rec.environment.end(), {pkg->r0[0], pkg->r1[0], pkg->d});
      }
    }

    const std::string tag = "p" + std::to_string(p);
    const int got_and = detail::transfer_bit(rec.events, 1, lo, hi, tag + ".and", s.b_and, s.b_and2,
                                             decisions[hi], pr.ot_and, options.ot, after);
    const int got_or = detail::transfer_bit(rec.events, 1, lo, hi, tag + ".or", s.b_or2, s.b_or,
                                            decisions[hi], pr.ot_or, options.ot, after);
    // lo_and ^ hi_and = d_lo & d_hi;  lo_or ^ hi_or = d_lo | d_hi.
    held[p - 1] = PairShares{s.b_and, s.b_or, got_and, 1 - got_or};
  }

  const int collect = after;
  for (std::size_t p = 1; p <= n; ++p) {
    const auto& h = held[p - 1];
    const std::string tag = "p" + std::to_string(p) + ".shares";
    const int lo = static_cast<int>(2 * p - 1);
    const int hi = static_cast<int>(2 * p);
    detail::emit(rec.events, collect, lo, 0, tag, {h.lo_and, h.lo_or},
                 ChannelKind::PrivatePointToPoint, {lo, 0});
    detail::emit(rec.events, collect, hi, 0, tag, {h.hi_and, h.hi_or},
                 ChannelKind::PrivatePointToPoint, {hi, 0});
  }

  std::size_t count = static_cast<std::size_t>(decisions[0]);
  for (const auto& h : held) {
    const int pair_and = h.lo_and ^ h.hi_and;
    const int pair_or = h.lo_or ^ h.hi_or;
    rec.pair_aggregates.push_back({pair_and, pair_or});
    count += static_cast<std::size_t>(pair_and + pair_or);
  }
  const int v = count >= n + 1 ? 1 : 0;
  const int announce = collect + 1;
  detail::emit(rec.events, announce, 0, kAllAgents, "verdict", {v}, ChannelKind::Broadcast, {});
  rec.verdict = core::verdict_from_bit(v);
  rec.outcome = v;
  rec.verdict_round = announce;

  detail::assemble_views(rec, own);
  return rec;
}

}  // namespace judgebench::protocols
