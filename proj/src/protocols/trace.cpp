#include "judgebench/protocols.hpp"

namespace judgebench::protocols {

namespace {

nlohmann::json agent_json(int agent) {
  if (agent == kAllAgents) return "all";
  if (agent == kInitialiser) return "T";
  return agent;
}

}  // namespace

nlohmann::json run_to_json(const RunRecord& run) {
  using nlohmann::json;
  json doc;
  doc["schema"] = "judgebench/1";
  doc["protocol"] = std::string(to_string(run.protocol));
  doc["n"] = run.n;
  doc["decisions"] = run.decisions.bits();
  json rnd = json::object();
  for (const auto& lv : run.randomness) rnd[lv.label] = lv.value;
  doc["randomness"] = std::move(rnd);
  json events = json::array();
  for (const auto& e : run.events) {
    events.push_back({{"round", e.round},
                      {"sender", agent_json(e.sender)},
                      {"receiver", agent_json(e.receiver)},
                      {"channel", std::string(to_string(e.kind))},
                      {"label", e.label},
                      {"payload", e.payload},
                      {"visible_to", e.visible_to}});
  }
  doc["events"] = std::move(events);
  json views = json::array();
  for (const auto& v : run.views) {
    json own = json::object();
    for (const auto& lv : v.own_randomness) own[lv.label] = lv.value;
    json seen = json::array();
    for (const auto& o : v.observed) {
      seen.push_back({{"round", o.round}, {"sender", agent_json(o.sender)}, {"label", o.label}, {"payload", o.payload}});
    }
    views.push_back({{"agent", v.agent},
                     {"decision", v.own_decision},
                     {"randomness", std::move(own)},
                     {"observed", std::move(seen)},
                     {"verdict", std::string(core::to_string(v.verdict))}});
  }
  doc["views"] = std::move(views);
  doc["verdict"] = std::string(core::to_string(run.verdict));
  doc["outcome"] = run.outcome;
  return doc;
}

}  // namespace judgebench::protocols
