#include <algorithm>
#include <deque>

#include "judgebench/error.hpp"
#include "judgebench/kripke.hpp"

namespace judgebench::kripke {

std::string_view to_string(ObsMode mode) {
  return mode == ObsMode::FullLocalState ? "full-local-state" : "verdict-and-own-decision";
}

ObsMode obs_mode_from_string(std::string_view name) {
  if (name == "full-local-state") return ObsMode::FullLocalState;
  if (name == "verdict-and-own-decision") return ObsMode::VerdictAndOwnDecision;
  throw ParameterError("unknown observation mode '" + std::string(name) + "'");
}

std::string_view to_string(VerdictDomain d) { return d == VerdictDomain::Binary ? "binary" : "count"; }

VerdictDomain verdict_domain_for(protocols::ProtocolId protocol) {
  return protocol == protocols::ProtocolId::DcpSum ? VerdictDomain::Count : VerdictDomain::Binary;
}

Atom Atom::parse(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ParameterError("atom '" + std::string(text) + "' has no '='");
  const auto name = text.substr(0, eq);
  const auto value = text.substr(eq + 1);
  auto to_int = [&](std::string_view s) {
    if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParameterError("atom '" + std::string(text) + "' has a malformed value");
    }
    return std::stoi(std::string(s));
  };
  if (name == "v") {
    if (value == "unknown") return verdict(kPending);
    return verdict(to_int(value));
  }
  if (name.size() >= 2 && name[0] == 'd') {
    const int judge = to_int(name.substr(1));
    const int bit = to_int(value);
    if (bit > 1) throw ParameterError("decision atom '" + std::string(text) + "' needs a bit");
    return decision(judge, bit);
  }
  throw ParameterError("unknown atom '" + std::string(text) + "'");
}

std::string Atom::str() const {
  if (kind == Kind::Verdict) return value == kPending ? "v=unknown" : "v=" + std::to_string(value);
  return "d" + std::to_string(judge) + "=" + std::to_string(value);
}

// ---------------------------------------------------------------------------

KripkeModel::KripkeModel(std::size_t judges, VerdictDomain domain, std::vector<StateData> states,
                         std::vector<std::vector<std::uint32_t>> obs, std::vector<StateId> init,
                         std::vector<std::pair<StateId, StateId>> edges,
                         std::vector<std::string> keys)
    : judges_(judges),
      domain_(domain),
      states_(std::move(states)),
      keys_(std::move(keys)),
      obs_(std::move(obs)),
      init_(std::move(init)) {
  if (!keys_.empty() && keys_.size() != states_.size()) {
    throw ValidationError("state key count does not match state count");
  }
  std::sort(init_.begin(), init_.end());
  init_.erase(std::unique(init_.begin(), init_.end()), init_.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& [s, t] : edges) {
    if (s >= states_.size() || t >= states_.size()) throw ValidationError("edge endpoint out of range");
  }

  const std::size_t n = states_.size();
  succ_begin_.assign(n + 1, 0);
  pred_begin_.assign(n + 1, 0);
  for (const auto& [s, t] : edges) {
    ++succ_begin_[s + 1];
    ++pred_begin_[t + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    succ_begin_[i + 1] += succ_begin_[i];
    pred_begin_[i + 1] += pred_begin_[i];
  }
  succ_.resize(edges.size());
  pred_.resize(edges.size());
  auto sfill = succ_begin_;
  auto pfill = pred_begin_;
  for (const auto& [s, t] : edges) {
    succ_[sfill[s]++] = t;
    pred_[pfill[t]++] = s;
  }
  index();
  validate();
}

void KripkeModel::index() {
  class_begin_.assign(obs_.size(), {});
  class_members_.assign(obs_.size(), {});
  for (std::size_t a = 0; a < obs_.size(); ++a) {
    const auto& cls = obs_[a];
    if (cls.size() != states_.size()) throw ValidationError("observation vector has the wrong length");
    std::uint32_t classes = 0;
    for (auto c : cls) classes = std::max(classes, c + 1);
    auto& begin = class_begin_[a];
    begin.assign(classes + 1, 0);
    for (auto c : cls) ++begin[c + 1];
    for (std::size_t c = 0; c < classes; ++c) begin[c + 1] += begin[c];
    auto fill = begin;
    auto& members = class_members_[a];
    members.resize(cls.size());
    for (StateId s = 0; s < cls.size(); ++s) members[fill[cls[s]]++] = s;
  }
}

void KripkeModel::validate() const {
  if (init_.empty()) throw ValidationError("model has no initial state");
  for (auto s : init_) {
    if (s >= states_.size()) throw ValidationError("initial state out of range");
  }
  for (StateId s = 0; s < states_.size(); ++s) {
    if (successors(s).empty()) {
      throw ValidationError("state " + std::to_string(s) + " has no successor");
    }
  }
  std::vector<char> seen(states_.size(), 0);
  std::deque<StateId> queue(init_.begin(), init_.end());
  for (auto s : init_) seen[s] = 1;
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    for (auto t : successors(s)) {
      if (!seen[t]) {
        seen[t] = 1;
        queue.push_back(t);
      }
    }
  }
  for (StateId s = 0; s < states_.size(); ++s) {
    if (!seen[s]) throw ValidationError("state " + std::to_string(s) + " is unreachable");
  }
  for (std::size_t a = 0; a < class_begin_.size(); ++a) {
    for (std::size_t c = 0; c + 1 < class_begin_[a].size(); ++c) {
      if (class_begin_[a][c] == class_begin_[a][c + 1]) {
        throw ValidationError("agent " + std::to_string(a) + " has an empty observation class");
      }
    }
  }
  if (judges_ > 63) throw ValidationError("too many judges");
}

std::vector<std::string> KripkeModel::agent_names() const {
  std::vector<std::string> names;
  for (std::size_t a = 0; a < obs_.size(); ++a) names.push_back("J" + std::to_string(a));
  return names;
}

std::span<const StateId> KripkeModel::successors(StateId s) const {
  if (s >= states_.size()) throw ParameterError("unknown state " + std::to_string(s));
  return {succ_.data() + succ_begin_[s], succ_begin_[s + 1] - succ_begin_[s]};
}

std::span<const StateId> KripkeModel::predecessors(StateId s) const {
  if (s >= states_.size()) throw ParameterError("unknown state " + std::to_string(s));
  return {pred_.data() + pred_begin_[s], pred_begin_[s + 1] - pred_begin_[s]};
}

std::vector<std::pair<StateId, StateId>> KripkeModel::edges() const {
  std::vector<std::pair<StateId, StateId>> out;
  out.reserve(succ_.size());
  for (StateId s = 0; s < states_.size(); ++s) {
    for (auto t : successors(s)) out.emplace_back(s, t);
  }
  return out;
}

int KripkeModel::decision(StateId s, std::size_t judge) const {
  return static_cast<int>((states_.at(s).decisions >> judge) & 1u);
}

const std::string& KripkeModel::key(StateId s) const {
  static const std::string empty;
  return keys_.empty() ? empty : keys_.at(s);
}

std::uint32_t KripkeModel::obs_class(std::size_t agent, StateId s) const {
  if (agent >= obs_.size()) throw ParameterError("unknown agent " + std::to_string(agent));
  if (s >= states_.size()) throw ParameterError("unknown state " + std::to_string(s));
  return obs_[agent][s];
}

std::size_t KripkeModel::num_classes(std::size_t agent) const {
  if (agent >= obs_.size()) throw ParameterError("unknown agent " + std::to_string(agent));
  return class_begin_[agent].size() - 1;
}

std::span<const StateId> KripkeModel::class_members(std::size_t agent, std::uint32_t cls) const {
  if (agent >= obs_.size()) throw ParameterError("unknown agent " + std::to_string(agent));
  const auto& begin = class_begin_[agent];
  if (cls + 1 >= begin.size()) throw ParameterError("unknown observation class");
  return {class_members_[agent].data() + begin[cls], begin[cls + 1] - begin[cls]};
}

bool KripkeModel::holds(const Atom& atom, StateId s) const {
  const auto& st = states_[s];
  if (atom.kind == Atom::Kind::Verdict) return st.verdict == atom.value;
  return static_cast<int>((st.decisions >> atom.judge) & 1u) == atom.value;
}

void KripkeModel::validate_atom(const Atom& atom) const {
  if (atom.kind == Atom::Kind::Decision) {
    if (atom.judge < 0 || static_cast<std::size_t>(atom.judge) >= judges_) {
      throw ValidationError("atom " + atom.str() + " names a judge outside 0.." +
                            std::to_string(judges_ - 1));
    }
    return;
  }
  if (atom.value == kPending) return;
  const int max = domain_ == VerdictDomain::Binary ? 1 : static_cast<int>(judges_);
  if (atom.value < 0 || atom.value > max) {
    throw ValidationError("atom " + atom.str() + " is outside the " + std::string(to_string(domain_)) +
                          " verdict domain");
  }
}

std::vector<std::string> KripkeModel::labels(StateId s) const {
  std::vector<std::string> out;
  out.push_back(Atom::verdict(verdict(s)).str());
  for (std::size_t j = 0; j < judges_; ++j) {
    out.push_back(Atom::decision(static_cast<int>(j), decision(s, j)).str());
  }
  return out;
}

bool operator==(const KripkeModel& a, const KripkeModel& b) {
  if (a.judges_ != b.judges_ || a.domain_ != b.domain_ || a.size() != b.size() ||
      a.init_ != b.init_ || a.succ_ != b.succ_ || a.succ_begin_ != b.succ_begin_ ||
      a.obs_ != b.obs_) {
    return false;
  }
  for (StateId s = 0; s < a.size(); ++s) {
    const auto& x = a.states_[s];
    const auto& y = b.states_[s];
    if (x.verdict != y.verdict || x.decisions != y.decisions || x.round != y.round) return false;
  }
  return true;
}

bool obs_equiv(const KripkeModel& m, std::size_t agent, StateId s, StateId t) {
  return m.obs_class(agent, s) == m.obs_class(agent, t);
}

}  // namespace judgebench::kripke
