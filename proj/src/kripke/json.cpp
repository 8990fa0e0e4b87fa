#include <fstream>

#include "judgebench/error.hpp"
#include "judgebench/kripke.hpp"

namespace judgebench::kripke {

nlohmann::json model_to_json(const KripkeModel& m) {
  using nlohmann::json;
  json doc;
  doc["schema"] = "judgebench/1";
  doc["verdict_domain"] = std::string(to_string(m.domain()));
  doc["judges"] = m.judges();
  doc["agents"] = m.agent_names();
  json states = json::array();
  for (StateId s = 0; s < m.size(); ++s) {
    json obs = json::array();
    for (std::size_t a = 0; a < m.num_agents(); ++a) obs.push_back(m.obs_class(a, s));
    states.push_back({{"id", s}, {"round", m.state(s).round}, {"labels", m.labels(s)}, {"obs", obs}});
  }
  doc["states"] = std::move(states);
  doc["init"] = m.init();
  json edges = json::array();
  for (const auto& [s, t] : m.edges()) edges.push_back({s, t});
  doc["edges"] = std::move(edges);
  return doc;
}

KripkeModel model_from_json(const nlohmann::json& doc) {
  try {
    const auto domain_name = doc.at("verdict_domain").get<std::string>();
    if (domain_name != "binary" && domain_name != "count") {
      throw SchemaError("verdict_domain", "expected binary or count");
    }
    const auto domain = domain_name == "binary" ? VerdictDomain::Binary : VerdictDomain::Count;
    const auto judges = doc.at("judges").get<std::size_t>();
    const auto agents = doc.at("agents").size();
    const auto& states = doc.at("states");

    std::vector<StateData> data(states.size());
    std::vector<std::vector<std::uint32_t>> obs(agents, std::vector<std::uint32_t>(states.size()));
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto& st = states[i];
      const auto id = st.at("id").get<std::size_t>();
      if (id != i) throw SchemaError("states[" + std::to_string(i) + "].id", "ids must be dense and ordered");
      data[i].round = st.value("round", 0);
      for (const auto& label : st.at("labels")) {
        const auto atom = Atom::parse(label.get<std::string>());
        if (atom.kind == Atom::Kind::Verdict) {
          data[i].verdict = atom.value;
        } else if (atom.value == 1) {
          data[i].decisions |= std::uint64_t{1} << atom.judge;
        }
      }
      const auto& ob = st.at("obs");
      if (ob.size() != agents) {
        throw SchemaError("states[" + std::to_string(i) + "].obs", "one class per agent expected");
      }
      for (std::size_t a = 0; a < agents; ++a) obs[a][i] = ob[a].get<std::uint32_t>();
    }
    auto init = doc.at("init").get<std::vector<StateId>>();
    std::vector<std::pair<StateId, StateId>> edges;
    for (const auto& e : doc.at("edges")) edges.emplace_back(e.at(0).get<StateId>(), e.at(1).get<StateId>());
    return KripkeModel(judges, domain, std::move(data), std::move(obs), std::move(init), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("model", e.what());
  } catch (const ParameterError& e) {
    throw SchemaError("states.labels", e.what());
  }
}

void export_model(const KripkeModel& m, const std::filesystem::path& path) {
  if (m.init().empty()) throw ValidationError("refusing to export a model without initial states");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << model_to_json(m).dump() << '\n';
  if (!out) throw IoError("write to " + path.string() + " failed");
}

KripkeModel import_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path.string(), e.what());
  }
  return model_from_json(doc);
}

}  // namespace judgebench::kripke
