#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "judgebench/protocols.hpp"

namespace judgebench::kripke {

using StateId = std::uint32_t;

// What each judge can distinguish.
//   FullLocalState:        round, own decision, own randomness, every value
//                          received or sent so far (which includes v once
//                          announced).
//   VerdictAndOwnDecision: only (d_i, v).
enum class ObsMode { FullLocalState, VerdictAndOwnDecision };

std::string_view to_string(ObsMode mode);
ObsMode obs_mode_from_string(std::string_view name);

// Binary: v in {0, 1, pending}. Count: v in {0..2n+1, pending}.
enum class VerdictDomain { Binary, Count };

std::string_view to_string(VerdictDomain d);
VerdictDomain verdict_domain_for(protocols::ProtocolId protocol);

inline constexpr int kPending = -1;

// v=<value> (value kPending prints as "unknown") or d<judge>=<bit>.
struct Atom {
  enum class Kind { Verdict, Decision };
  Kind kind = Kind::Verdict;
  int judge = 0;
  int value = 0;

  static Atom verdict(int value) { return {Kind::Verdict, 0, value}; }
  static Atom decision(int judge, int bit) { return {Kind::Decision, judge, bit}; }
  // Throws ParameterError on anything else.
  static Atom parse(std::string_view text);
  std::string str() const;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct StateData {
  int verdict = kPending;
  std::uint64_t decisions = 0;  // bit i = d_i
  int round = 0;
};

class KripkeModel {
 public:
  KripkeModel() = default;
  // `obs[a][s]` is agent a's observation class of state s. Throws
  // ValidationError if the parts break an invariant.
  KripkeModel(std::size_t judges, VerdictDomain domain, std::vector<StateData> states,
              std::vector<std::vector<std::uint32_t>> obs, std::vector<StateId> init,
              std::vector<std::pair<StateId, StateId>> edges, std::vector<std::string> keys = {});

  std::size_t size() const noexcept { return states_.size(); }
  std::size_t judges() const noexcept { return judges_; }
  std::size_t num_agents() const noexcept { return obs_.size(); }
  std::vector<std::string> agent_names() const;
  VerdictDomain domain() const noexcept { return domain_; }

  const std::vector<StateId>& init() const noexcept { return init_; }
  std::span<const StateId> successors(StateId s) const;
  std::span<const StateId> predecessors(StateId s) const;
  std::size_t num_edges() const noexcept { return succ_.size(); }
  std::vector<std::pair<StateId, StateId>> edges() const;

  const StateData& state(StateId s) const { return states_.at(s); }
  int verdict(StateId s) const { return states_.at(s).verdict; }
  int decision(StateId s, std::size_t judge) const;
  // Empty for imported models.
  const std::string& key(StateId s) const;

  std::uint32_t obs_class(std::size_t agent, StateId s) const;
  std::size_t num_classes(std::size_t agent) const;
  std::span<const StateId> class_members(std::size_t agent, std::uint32_t cls) const;

  bool holds(const Atom& atom, StateId s) const;
  // Throws ValidationError if the atom names no proposition of this model.
  void validate_atom(const Atom& atom) const;
  std::vector<std::string> labels(StateId s) const;

  friend bool operator==(const KripkeModel& a, const KripkeModel& b);

 private:
  void index();
  void validate() const;

  std::size_t judges_ = 0;
  VerdictDomain domain_ = VerdictDomain::Binary;
  std::vector<StateData> states_;
  std::vector<std::string> keys_;
  std::vector<std::vector<std::uint32_t>> obs_;
  std::vector<StateId> init_;
  // CSR adjacency.
  std::vector<std::size_t> succ_begin_, pred_begin_;
  std::vector<StateId> succ_, pred_;
  // Per agent CSR of class members.
  std::vector<std::vector<std::size_t>> class_begin_;
  std::vector<std::vector<StateId>> class_members_;
};

// Throws ParameterError for an unknown state id.
bool obs_equiv(const KripkeModel& m, std::size_t agent, StateId s, StateId t);

struct BuildOptions {
  ObsMode obs = ObsMode::FullLocalState;
  protocols::OtMode ot = protocols::OtMode::Ideal;
  std::optional<core::DecisionVector> decisions;
  std::optional<protocols::Sampled> sampled;
  std::uint64_t state_cap = 10'000'000;
  std::uint64_t run_bound = 10'000'000;
};

// Runs the protocol over the requested decision and randomness space and
// collects every round of every run as a global state. Throws CapacityError
// when the distinct state count passes `state_cap`.
KripkeModel build_model(protocols::ProtocolId protocol, std::size_t n, const BuildOptions& options = {});

// Canonical global-state form of round `round` of a run, and the matching
// observation key of one judge.
std::string global_key(const protocols::RunRecord& run, int round);
std::string local_key(const protocols::RunRecord& run, std::size_t judge, int round, ObsMode mode);

nlohmann::json model_to_json(const KripkeModel& m);
KripkeModel model_from_json(const nlohmann::json& doc);
void export_model(const KripkeModel& m, const std::filesystem::path& path);
KripkeModel import_model(const std::filesystem::path& path);

}  // namespace judgebench::kripke
