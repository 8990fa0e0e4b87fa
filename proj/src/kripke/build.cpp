#include <algorithm>
#include <cstdio>
#include <deque>
#include <numeric>
#include <string_view>
#include <unordered_map>

#include "judgebench/error.hpp"
#include "judgebench/kripke.hpp"

namespace judgebench::kripke {

namespace {

int outcome_at(const protocols::RunRecord& run, int round) {
  return round >= run.verdict_round ? run.outcome : kPending;
}

void append_values(std::string& out, const std::vector<int>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(values[i]);
  }
}

std::string round_tag(int round) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "r%03d", round);
  return buf;
}

std::string full_local(const protocols::RunRecord& run, std::size_t judge, int round) {
  const auto& view = run.views.at(judge);
  std::string out = round_tag(round);
  out += ";d" + std::to_string(view.own_decision) + ";own[";
  for (const auto& lv : view.own_randomness) out += lv.label + "=" + std::to_string(lv.value) + ",";
  out += "];obs[";
  for (const auto& o : view.observed) {
    if (o.round > round) continue;
    out += std::to_string(o.round) + ":" + std::to_string(o.sender) + ":" + o.label + ":";
    append_values(out, o.payload);
    out.push_back(';');
  }
  out.push_back(']');
  return out;
}

}  // namespace

std::string local_key(const protocols::RunRecord& run, std::size_t judge, int round, ObsMode mode) {
  if (mode == ObsMode::VerdictAndOwnDecision) {
    const int v = outcome_at(run, round);
    return "d" + std::to_string(run.decisions[judge]) + ";v" + (v == kPending ? "u" : std::to_string(v));
  }
  return full_local(run, judge, round);
}

std::string global_key(const protocols::RunRecord& run, int round) {
  const int v = outcome_at(run, round);
  std::string out = round_tag(round) + ";v" + (v == kPending ? "u" : std::to_string(v)) + ";env[";
  append_values(out, run.environment);
  out.push_back(']');
  for (std::size_t j = 0; j < run.judges(); ++j) {
    out += "|J" + std::to_string(j) + "{" + full_local(run, j, round) + "}";
  }
  return out;
}

KripkeModel build_model(protocols::ProtocolId protocol, std::size_t n, const BuildOptions& options) {
  protocols::EnumerationRequest req;
  req.protocol = protocol;
  req.n = n;
  req.decisions = options.decisions;
  req.sampled = options.sampled;
  req.options.ot = options.ot;
  req.bound = options.run_bound;

  const std::size_t judges = 2 * n + 1;
  std::deque<std::string> keys;
  std::unordered_map<std::string_view, StateId> ids;
  std::vector<StateData> data;
  std::vector<std::unordered_map<std::string, std::uint32_t>> obs_ids(judges);
  std::vector<std::vector<std::uint32_t>> obs(judges);
  std::vector<StateId> init;
  std::vector<std::pair<StateId, StateId>> edges;

  auto intern = [&](const protocols::RunRecord& run, int round) -> StateId {
    std::string key = global_key(run, round);
    if (auto it = ids.find(key); it != ids.end()) return it->second;
    if (data.size() + 1 > options.state_cap) {
      throw CapacityError("model exceeds the state cap of " + std::to_string(options.state_cap) +
                              " (reached " + std::to_string(data.size() + 1) + " states)",
                          data.size() + 1);
    }
    const auto id = static_cast<StateId>(data.size());
    keys.push_back(std::move(key));
    ids.emplace(keys.back(), id);
    data.push_back(StateData{outcome_at(run, round), run.decisions.mask(), round});
    for (std::size_t j = 0; j < judges; ++j) {
      auto [it, fresh] = obs_ids[j].try_emplace(local_key(run, j, round, options.obs),
                                                static_cast<std::uint32_t>(obs_ids[j].size()));
      obs[j].push_back(it->second);
    }
    return id;
  };

  protocols::enumerate_runs(req, [&](const protocols::RunRecord& run) {
    const int last = run.final_round();
    StateId prev = intern(run, 0);
    init.push_back(prev);
    for (int r = 1; r <= last; ++r) {
      const StateId cur = intern(run, r);
      edges.emplace_back(prev, cur);
      prev = cur;
    }
    edges.emplace_back(prev, prev);
  });

  // Dense ids in lexicographic order of the canonical form.
  const std::size_t count = data.size();
  std::vector<StateId> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](StateId a, StateId b) { return keys[a] < keys[b]; });
  std::vector<StateId> rank(count);
  for (std::size_t i = 0; i < count; ++i) rank[order[i]] = static_cast<StateId>(i);

  std::vector<StateData> sorted_data(count);
  std::vector<std::string> sorted_keys(count);
  for (std::size_t i = 0; i < count; ++i) {
    sorted_data[i] = data[order[i]];
    sorted_keys[i] = std::move(keys[order[i]]);
  }
  std::vector<std::vector<std::uint32_t>> sorted_obs(judges, std::vector<std::uint32_t>(count));
  for (std::size_t j = 0; j < judges; ++j) {
    std::vector<std::uint32_t> renumber(obs_ids[j].size(), UINT32_MAX);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < count; ++i) {
      auto& r = renumber[obs[j][order[i]]];
      if (r == UINT32_MAX) r = next++;
      sorted_obs[j][i] = r;
    }
  }
  for (auto& s : init) s = rank[s];
  for (auto& [s, t] : edges) {
    s = rank[s];
    t = rank[t];
  }
  return KripkeModel(judges, verdict_domain_for(protocol), std::move(sorted_data), std::move(sorted_obs),
                     std::move(init), std::move(edges), std::move(sorted_keys));
}

}  // namespace judgebench::kripke
