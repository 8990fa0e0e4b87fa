#include "detail.hpp"
#include "judgebench/error.hpp"

namespace judgebench::protocols {

namespace {
constexpr int kA = 0;
constexpr int kB = 1;
constexpr int kC = 2;
}  // namespace

// A = J0, B = J1, C = J2. B splits its decision into and/or shares, C picks
// its halves by OT on c, and A fetches either both and-shares (a = 0) or both
// or-shares (a = 1), again by OT, before announcing.
RunRecord run_three_judges_mm(const DecisionVector& decisions, const MmRandomness& randomness,
                              const RunOptions& options) {
  if (decisions.size() != 3) {
    throw ParameterError("the three-judges protocol takes exactly 3 decisions, got " +
                         std::to_string(decisions.size()));
  }
  const int a = decisions[0];
  const int b = decisions[1];
  const int c = decisions[2];
  const ShareSet shares = make_share_set(b, randomness.b_and, randomness.b_or);

  RunRecord rec;
  rec.protocol = ProtocolId::ThreeJudgesMM;
  rec.n = 1;
  rec.decisions = decisions;
  rec.randomness = {{"b_and", randomness.b_and}, {"b_or", randomness.b_or}};
  if (options.ot == OtMode::Transcript) {
    for (const auto& pkg : randomness.ot) {
      rec.environment.insert(rec.environment.end(), {pkg.r0[0], pkg.r1[0], pkg.d});
    }
  }

  // Steps 1-4: C learns c_and = (c ? b_and2 : b_and) and c_or = (c ? b_or : b_or2).
  int round = 1;
  int after = round;
  const int c_and = detail::transfer_bit(rec.events, round, kB, kC, "bc_and", shares.b_and,
                                         shares.b_and2, c, randomness.ot[0], options.ot, after);
  const int c_or = detail::transfer_bit(rec.events, round, kB, kC, "bc_or", shares.b_or2,
                                        shares.b_or, c, randomness.ot[1], options.ot, after);
  round = after;

  // Step 5: index 0 fetches the and-shares, index 1 the or-shares.
  const int fetch = options.announce == AnnounceRule::Prose ? a : 1 - a;
  const int from_b = detail::transfer_bit(rec.events, round, kB, kA, "ba", shares.b_and,
                                          shares.b_or, fetch, randomness.ot[2], options.ot, after);
  const int from_c = detail::transfer_bit(rec.events, round, kC, kA, "ca", c_and, c_or, fetch,
                                          randomness.ot[3], options.ot, after);
  round = after;

  // and-shares xor to b&c; or-shares xor to !(b|c).
  const int v = fetch == 0 ? (from_b ^ from_c) : 1 - (from_b ^ from_c);
  detail::emit(rec.events, round, kA, kAllAgents, "verdict", {v}, ChannelKind::Broadcast, {});
  rec.verdict = core::verdict_from_bit(v);
  rec.outcome = v;
  rec.verdict_round = round;

  detail::assemble_views(rec, {{}, {{"b_and", randomness.b_and}, {"b_or", randomness.b_or}}, {}});
  return rec;
}

}  // namespace judgebench::protocols
