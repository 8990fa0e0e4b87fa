#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "judgebench/core.hpp"
#include "judgebench/ot.hpp"

namespace judgebench::protocols {

using core::DecisionVector;
using core::Verdict;

enum class ProtocolId { ThreeJudgesMM, Centralised, DcpSum };

std::string_view to_string(ProtocolId id);
ProtocolId protocol_from_string(std::string_view name);

// How oblivious transfers appear in traces and views.
//   Transcript: full Rivest exchange with a trusted initialiser; each OT takes
//               three rounds (init, request e, response f0/f1).
//   Ideal:      one round; only the receiver sees its chosen message.
enum class OtMode { Transcript, Ideal };

std::string_view to_string(OtMode mode);
OtMode ot_mode_from_string(std::string_view name);

enum class ChannelKind { PrivatePointToPoint, ObliviousTransfer, Broadcast };

std::string_view to_string(ChannelKind kind);

inline constexpr int kAllAgents = -1;
inline constexpr int kInitialiser = -2;

struct TraceEvent {
  int round = 0;
  int sender = 0;
  int receiver = kAllAgents;
  std::string label;
  std::vector<int> payload;
  ChannelKind kind = ChannelKind::PrivatePointToPoint;
  std::vector<int> visible_to;  // judge ids; empty for broadcasts (everyone)

  bool visible(int agent) const;
};

struct LabeledValue {
  std::string label;
  int value = 0;
  friend bool operator==(const LabeledValue&, const LabeledValue&) = default;
};

struct Observation {
  int round = 0;
  int sender = 0;
  std::string label;
  std::vector<int> payload;
};

struct AgentView {
  int agent = 0;
  int own_decision = 0;
  std::vector<LabeledValue> own_randomness;
  std::vector<Observation> observed;
  Verdict verdict = Verdict::Pending;
};

// XOR sharing held by the owner B of decision b:
//   b_and ^ b_and2 == b,   b_or ^ b_or2 == !b.
struct ShareSet {
  int b_and = 0;
  int b_and2 = 0;
  int b_or = 0;
  int b_or2 = 0;
};

// Derives the dependent halves from two free random bits.
ShareSet make_share_set(int owner_bit, int and_random, int or_random);
// Throws ParameterError when the four bits break the invariant for `owner_bit`.
ShareSet validate_share_set(const ShareSet& s, int owner_bit);

struct DcpState {
  std::size_t n = 0;
  int modulus = 0;
  std::vector<int> secrets;        // s_i shared by judges i and i+1 (mod 2n+1)
  std::vector<int> announcements;  // a_i = s_i - s_(i-1) + d_i mod (2n+2)
  int sum = 0;
};

struct RunRecord {
  ProtocolId protocol = ProtocolId::ThreeJudgesMM;
  std::size_t n = 0;  // judges = 2n+1
  DecisionVector decisions;
  std::vector<LabeledValue> randomness;
  std::vector<TraceEvent> events;
  std::vector<AgentView> views;
  Verdict verdict = Verdict::Pending;
  // Value of the public outcome variable v: the verdict bit, or the vote
  // count for the sum protocol.
  int outcome = 0;
  int verdict_round = 0;
  // Randomness held only by the environment (the trusted initialiser).
  std::vector<int> environment;
  // Leader's reconstructed (AND, OR) per pair, centralised protocol only.
  std::vector<std::array<int, 2>> pair_aggregates;
  std::optional<DcpState> dcp;

  std::size_t judges() const noexcept { return 2 * n + 1; }
  int final_round() const noexcept;
};

// ---------------------------------------------------------------------------
// Randomness

struct MmRandomness {
  int b_and = 0;
  int b_or = 0;
  // Packages for B->C (and), B->C (or), B->A, C->A. Transcript mode only.
  std::array<ot::OtInitPackage, 4> ot;
};

struct PairRandomness {
  int and_share = 0;
  int or_share = 0;
  ot::OtInitPackage ot_and;
  ot::OtInitPackage ot_or;
};

struct CentralisedRandomness {
  std::vector<PairRandomness> pairs;
};

// Mixed-radix space of independent random digits.
struct RandomSpace {
  std::vector<int> radices;
  std::vector<std::string> labels;

  // Saturates at UINT64_MAX.
  std::uint64_t size() const noexcept;
  std::vector<int> digits(std::uint64_t index) const;
  std::vector<int> sample(std::mt19937_64& rng) const;
};

RandomSpace randomness_space(ProtocolId protocol, std::size_t n, OtMode mode);

MmRandomness decode_mm(const std::vector<int>& digits, OtMode mode);
CentralisedRandomness decode_centralised(std::size_t n, const std::vector<int>& digits, OtMode mode);

// ---------------------------------------------------------------------------
// Protocol runs

// Which rule A uses in the final step. Prose: announce b&c when a = 0 and
// b|c when a = 1. Printed: the swapped assignment, which is not functional.
enum class AnnounceRule { Prose, Printed };

struct RunOptions {
  OtMode ot = OtMode::Transcript;
  AnnounceRule announce = AnnounceRule::Prose;
};

RunRecord run_three_judges_mm(const DecisionVector& decisions, const MmRandomness& randomness,
                              const RunOptions& options = {});

RunRecord run_centralised(const DecisionVector& decisions, const CentralisedRandomness& randomness,
                          const RunOptions& options = {});

RunRecord run_dcp_sum(const DecisionVector& decisions, const std::vector<int>& secrets);

// Dispatch on a digit vector from randomness_space().
RunRecord run_with_digits(ProtocolId protocol, const DecisionVector& decisions,
                          const std::vector<int>& digits, const RunOptions& options = {});

// ---------------------------------------------------------------------------
// Enumeration

struct Sampled {
  std::size_t count = 0;  // draws per decision vector
  std::uint64_t seed = 0;
};

struct EnumerationRequest {
  ProtocolId protocol = ProtocolId::ThreeJudgesMM;
  std::size_t n = 1;
  std::optional<DecisionVector> decisions;  // nullopt: all 2^(2n+1)
  std::optional<Sampled> sampled;           // nullopt: exhaustive
  RunOptions options;
  std::uint64_t bound = 10'000'000;
};

// Number of runs the request yields. Throws CapacityError for an
// exhaustive request above the bound.
std::uint64_t count_runs(const EnumerationRequest& request);

// Deterministic order: decision vectors by mask, then randomness index.
void enumerate_runs(const EnumerationRequest& request,
                    const std::function<void(const RunRecord&)>& visit);

// Splits the decision vectors over `jobs` threads; `visit` must be thread-safe.
void enumerate_runs_parallel(const EnumerationRequest& request, std::size_t jobs,
                             const std::function<void(const RunRecord&)>& visit);

// One trace document per run:
// {schema, protocol, n, decisions, randomness, events, views, verdict}.
nlohmann::json run_to_json(const RunRecord& run);

}  // namespace judgebench::protocols
