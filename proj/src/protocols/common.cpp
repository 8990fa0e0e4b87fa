#include <algorithm>
#include <limits>

#include "detail.hpp"
#include "judgebench/error.hpp"

namespace judgebench::protocols {

std::string_view to_string(ProtocolId id) {
  switch (id) {
    case ProtocolId::ThreeJudgesMM: return "three_judges_mm";
    case ProtocolId::Centralised: return "centralised";
    case ProtocolId::DcpSum: return "dcp_sum";
  }
  return "?";
}

ProtocolId protocol_from_string(std::string_view name) {
  if (name == "three_judges_mm") return ProtocolId::ThreeJudgesMM;
  if (name == "centralised") return ProtocolId::Centralised;
  if (name == "dcp_sum") return ProtocolId::DcpSum;
  throw ParameterError("unknown protocol '" + std::string(name) + "'");
}

std::string_view to_string(OtMode mode) {
  return mode == OtMode::Transcript ? "transcript" : "ideal";
}

OtMode ot_mode_from_string(std::string_view name) {
  if (name == "transcript") return OtMode::Transcript;
  if (name == "ideal") return OtMode::Ideal;
  throw ParameterError("unknown OT mode '" + std::string(name) + "'");
}

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::PrivatePointToPoint: return "private";
    case ChannelKind::ObliviousTransfer: return "ot";
    case ChannelKind::Broadcast: return "broadcast";
  }
  return "?";
}

bool TraceEvent::visible(int agent) const {
  if (kind == ChannelKind::Broadcast) return true;
  return std::find(visible_to.begin(), visible_to.end(), agent) != visible_to.end();
}

int RunRecord::final_round() const noexcept {
  int r = verdict_round;
  for (const auto& e : events) r = std::max(r, e.round);
  return r;
}

ShareSet make_share_set(int owner_bit, int and_random, int or_random) {
  if ((owner_bit | and_random | or_random) & ~1) throw ParameterError("share inputs must be bits");
  return ShareSet{and_random, and_random ^ owner_bit, or_random, or_random ^ (1 - owner_bit)};
}

ShareSet validate_share_set(const ShareSet& s, int owner_bit) {
  if (((s.b_and | s.b_and2 | s.b_or | s.b_or2) & ~1) != 0) {
    throw ParameterError("shares must be bits");
  }
  if ((s.b_and ^ s.b_and2) != owner_bit) {
    throw ParameterError("and-shares do not xor to the owner's decision");
  }
  if ((s.b_or ^ s.b_or2) != 1 - owner_bit) {
    throw ParameterError("or-shares do not xor to the negated decision");
  }
  return s;
}

// ---------------------------------------------------------------------------

std::uint64_t RandomSpace::size() const noexcept {
  std::uint64_t total = 1;
  for (int r : radices) {
    const auto ur = static_cast<std::uint64_t>(r);
    if (total > std::numeric_limits<std::uint64_t>::max() / ur) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= ur;
  }
  return total;
}

std::vector<int> RandomSpace::digits(std::uint64_t index) const {
  std::vector<int> out(radices.size());
  for (std::size_t i = radices.size(); i-- > 0;) {
    const auto r = static_cast<std::uint64_t>(radices[i]);
    out[i] = static_cast<int>(index % r);
    index /= r;
  }
  return out;
}

std::vector<int> RandomSpace::sample(std::mt19937_64& rng) const {
  std::vector<int> out(radices.size());
  for (std::size_t i = 0; i < radices.size(); ++i) {
    out[i] = std::uniform_int_distribution<int>(0, radices[i] - 1)(rng);
  }
  return out;
}

namespace {

void add_ot_digits(RandomSpace& space, const std::string& prefix) {
  for (const char* part : {".r0", ".r1", ".d"}) {
    space.radices.push_back(2);
    space.labels.push_back(prefix + part);
  }
}

ot::OtInitPackage ot_from_digits(const std::vector<int>& digits, std::size_t at) {
  return ot::ot_init(ot::BitString({digits.at(at)}), ot::BitString({digits.at(at + 1)}),
                     digits.at(at + 2));
}

ot::OtInitPackage zero_package() { return ot::ot_init(ot::BitString({0}), ot::BitString({0}), 0); }

const char* const kMmTransfers[4] = {"bc_and", "bc_or", "ba", "ca"};

}  // namespace

RandomSpace randomness_space(ProtocolId protocol, std::size_t n, OtMode mode) {
  RandomSpace space;
  switch (protocol) {
    case ProtocolId::ThreeJudgesMM:
      if (n != 1) throw ParameterError("the three-judges protocol has n = 1");
      space.radices = {2, 2};
      space.labels = {"b_and", "b_or"};
      if (mode == OtMode::Transcript) {
        for (const char* name : kMmTransfers) add_ot_digits(space, name);
      }
      break;
    case ProtocolId::Centralised:
      if (n < 1) throw ParameterError("the centralised protocol needs n >= 1");
      for (std::size_t p = 1; p <= n; ++p) {
        const std::string prefix = "p" + std::to_string(p);
        space.radices.push_back(2);
        space.labels.push_back(prefix + ".and_share");
        space.radices.push_back(2);
        space.labels.push_back(prefix + ".or_share");
        if (mode == OtMode::Transcript) {
          add_ot_digits(space, prefix + ".and");
          add_ot_digits(space, prefix + ".or");
        }
      }
      break;
    case ProtocolId::DcpSum:
      if (n < 1) throw ParameterError("the sum protocol needs n >= 1");
      for (std::size_t i = 0; i <= 2 * n; ++i) {
        space.radices.push_back(static_cast<int>(2 * n + 2));
        space.labels.push_back("s" + std::to_string(i));
      }
      break;
  }
  return space;
}

MmRandomness decode_mm(const std::vector<int>& digits, OtMode mode) {
  const std::size_t expected = mode == OtMode::Transcript ? 14 : 2;
  if (digits.size() != expected) throw ParameterError("wrong number of random digits");
  MmRandomness r;
  r.b_and = digits[0];
  r.b_or = digits[1];
  for (std::size_t t = 0; t < 4; ++t) {
    r.ot[t] = mode == OtMode::Transcript ? ot_from_digits(digits, 2 + 3 * t) : zero_package();
  }
  return r;
}

CentralisedRandomness decode_centralised(std::size_t n, const std::vector<int>& digits, OtMode mode) {
  const std::size_t per_pair = mode == OtMode::Transcript ? 8 : 2;
  if (digits.size() != n * per_pair) throw ParameterError("wrong number of random digits");
  CentralisedRandomness r;
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t at = p * per_pair;
    PairRandomness pr;
    pr.and_share = digits[at];
    pr.or_share = digits[at + 1];
    pr.ot_and = mode == OtMode::Transcript ? ot_from_digits(digits, at + 2) : zero_package();
    pr.ot_or = mode == OtMode::Transcript ? ot_from_digits(digits, at + 5) : zero_package();
    r.pairs.push_back(pr);
  }
  return r;
}

RunRecord run_with_digits(ProtocolId protocol, const DecisionVector& decisions,
                          const std::vector<int>& digits, const RunOptions& options) {
  RunRecord rec;
  switch (protocol) {
    case ProtocolId::ThreeJudgesMM:
      rec = run_three_judges_mm(decisions, decode_mm(digits, options.ot), options);
      break;
    case ProtocolId::Centralised:
      rec = run_centralised(decisions, decode_centralised(decisions.size() / 2, digits, options.ot),
                            options);
      break;
    case ProtocolId::DcpSum:
      rec = run_dcp_sum(decisions, digits);
      break;
  }
  const auto space = randomness_space(protocol, decisions.size() / 2, options.ot);
  rec.randomness.clear();
  for (std::size_t i = 0; i < digits.size(); ++i) {
    rec.randomness.push_back({space.labels.at(i), digits[i]});
  }
  return rec;
}

// ---------------------------------------------------------------------------

namespace detail {

void emit(std::vector<TraceEvent>& events, int round, int sender, int receiver, std::string label,
          std::vector<int> payload, ChannelKind kind, std::vector<int> visible_to) {
  events.push_back(TraceEvent{round, sender, receiver, std::move(label), std::move(payload), kind,
                              std::move(visible_to)});
}

int transfer_bit(std::vector<TraceEvent>& events, int round, int sender, int receiver,
                 const std::string& label, int m0, int m1, int choice,
                 const ot::OtInitPackage& pkg, OtMode mode, int& next_round) {
  if (mode == OtMode::Ideal) {
    const int got = choice == 0 ? m0 : m1;
    emit(events, round, sender, receiver, label, {got}, ChannelKind::ObliviousTransfer, {receiver});
    next_round = round + 1;
    return got;
  }
  const auto [r0, r1] = pkg.alice_share();
  const auto [d, rd] = pkg.bob_share();
  emit(events, round, kInitialiser, sender, label + ".init", {r0[0], r1[0]},
       ChannelKind::ObliviousTransfer, {sender});
  emit(events, round, kInitialiser, receiver, label + ".init", {d, rd[0]},
       ChannelKind::ObliviousTransfer, {receiver});
  const auto t = ot::ot_execute(ot::BitString({m0}), ot::BitString({m1}), choice, pkg);
  emit(events, round + 1, receiver, sender, label + ".e", {t.e}, ChannelKind::ObliviousTransfer,
       {sender, receiver});
  emit(events, round + 2, sender, receiver, label + ".f", {t.f0[0], t.f1[0]},
       ChannelKind::ObliviousTransfer, {sender, receiver});
  next_round = round + 3;
  return t.delivered[0];
}

void assemble_views(RunRecord& record, const std::vector<std::vector<LabeledValue>>& own_randomness) {
  // Parallel transfers interleave; keep the trace in round order.
  std::stable_sort(record.events.begin(), record.events.end(),
                   [](const TraceEvent& a, const TraceEvent& b) { return a.round < b.round; });
  record.views.clear();
  for (std::size_t i = 0; i < record.judges(); ++i) {
    AgentView view;
    view.agent = static_cast<int>(i);
    view.own_decision = record.decisions[i];
    view.own_randomness = own_randomness.at(i);
    for (const auto& e : record.events) {
      if (e.visible(view.agent)) view.observed.push_back({e.round, e.sender, e.label, e.payload});
    }
    view.verdict = record.verdict;
    record.views.push_back(std::move(view));
  }
}

void check_judge_count(const DecisionVector& decisions, std::size_t minimum) {
  if (decisions.size() < minimum || decisions.size() % 2 == 0) {
    throw ParameterError("need an odd number of at least " + std::to_string(minimum) +
                         " judges, got " + std::to_string(decisions.size()));
  }
}

}  // namespace detail
}  // namespace judgebench::protocols
