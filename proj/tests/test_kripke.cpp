#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "judgebench/error.hpp"
#include "judgebench/kripke.hpp"

using namespace judgebench;
using namespace judgebench::kripke;
using protocols::ProtocolId;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The J<a>{...} block of a global key.
std::string local_part(const std::string& key, std::size_t agent) {
  const auto tag = "|J" + std::to_string(agent) + "{";
  const auto b = key.find(tag);
  const auto e = key.find("}", b);
  return key.substr(b, e - b);
}

std::filesystem::path temp_file(const char* name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("three judges model shape") {
  const auto m = build_model(ProtocolId::ThreeJudgesMM, 1);
  CHECK(m.init().size() == 32);
  CHECK(m.judges() == 3);
  CHECK(m.domain() == VerdictDomain::Binary);
  // Every path ends in a self-looped terminal state carrying a verdict.
  for (StateId s = 0; s < m.size(); ++s) {
    const auto succ = m.successors(s);
    REQUIRE(!succ.empty());
    if (succ.size() == 1 && succ[0] == s) REQUIRE(m.verdict(s) != kPending);
  }
  for (auto s : m.init()) {
    StateId cur = s;
    for (std::size_t step = 0; step <= m.size(); ++step) cur = m.successors(cur)[0];
    CHECK(m.successors(cur)[0] == cur);
    CHECK(m.verdict(cur) != kPending);
  }
}

TEST_CASE("dcp model has 512 initial states") {
  const auto m = build_model(ProtocolId::DcpSum, 1);
  CHECK(m.init().size() == 512);
  CHECK(m.size() == 1024);
  CHECK(m.domain() == VerdictDomain::Count);
}

TEST_CASE("state cap") {
  BuildOptions o;
  o.state_cap = 1;
  for (auto p : {ProtocolId::ThreeJudgesMM, ProtocolId::Centralised, ProtocolId::DcpSum}) {
    CHECK_THROWS_AS(build_model(p, 1, o), CapacityError);
  }
  try {
    build_model(ProtocolId::DcpSum, 1, o);
  } catch (const CapacityError& e) {
    CHECK(e.count() == 2);
    CHECK(std::string(e.what()).find("state cap of 1") != std::string::npos);
  }
}

TEST_CASE("observation classes follow the local states") {
  for (auto p : {ProtocolId::ThreeJudgesMM, ProtocolId::Centralised, ProtocolId::DcpSum}) {
    const auto m = build_model(p, 1);
    for (std::size_t a = 0; a < m.num_agents(); ++a) {
      std::map<std::string, std::uint32_t> cls;
      for (StateId s = 0; s < m.size(); ++s) {
        const auto [it, fresh] = cls.emplace(local_part(m.key(s), a), m.obs_class(a, s));
        REQUIRE(it->second == m.obs_class(a, s));
      }
      CHECK(cls.size() == m.num_classes(a));
    }
  }
}

TEST_CASE("observational equivalence is an equivalence") {
  const auto m = build_model(ProtocolId::ThreeJudgesMM, 1);
  for (std::size_t a = 0; a < 3; ++a) {
    for (StateId s = 0; s < m.size(); ++s) {
      REQUIRE(obs_equiv(m, a, s, s));
      for (StateId t = 0; t < m.size(); ++t) {
        const bool st = obs_equiv(m, a, s, t);
        REQUIRE(st == obs_equiv(m, a, t, s));
        if (!st) continue;
        REQUIRE(m.decision(s, a) == m.decision(t, a));
        for (StateId u = 0; u < m.size(); ++u) {
          if (obs_equiv(m, a, t, u)) REQUIRE(obs_equiv(m, a, s, u));
        }
      }
    }
  }
  CHECK_THROWS_AS(obs_equiv(m, 0, 0, static_cast<StateId>(m.size())), ParameterError);
}

TEST_CASE("dcp states with the same view are equivalent") {
  const auto m = build_model(ProtocolId::DcpSum, 1);
  std::map<std::string, StateId> id;
  for (StateId s = 0; s < m.size(); ++s) id[m.key(s)] = s;
  const auto r1 = protocols::run_dcp_sum(core::DecisionVector({1, 0, 1}), {1, 3, 2});
  const auto r2 = protocols::run_dcp_sum(core::DecisionVector({1, 1, 0}), {1, 2, 2});
  REQUIRE(r1.dcp->announcements == r2.dcp->announcements);
  const auto s = id.at(global_key(r1, 1));
  const auto t = id.at(global_key(r2, 1));
  CHECK(s != t);
  CHECK(obs_equiv(m, 0, s, t));
  CHECK_FALSE(obs_equiv(m, 1, s, t));
  const auto r3 = protocols::run_dcp_sum(core::DecisionVector({0, 0, 1}), {1, 3, 2});
  CHECK_FALSE(obs_equiv(m, 0, s, id.at(global_key(r3, 1))));
}

TEST_CASE("labels and verdict stay consistent") {
  for (auto p : {ProtocolId::ThreeJudgesMM, ProtocolId::Centralised, ProtocolId::DcpSum}) {
    const auto m = build_model(p, 1);
    for (StateId s = 0; s < m.size(); ++s) {
      const auto labels = m.labels(s);
      int verdict_labels = 0;
      for (const auto& l : labels) verdict_labels += l.rfind("v=", 0) == 0;
      REQUIRE(verdict_labels == 1);
      REQUIRE(labels.size() == 1 + m.judges());
      for (auto t : m.successors(s)) {
        if (m.verdict(s) != kPending) REQUIRE(m.verdict(t) == m.verdict(s));
        REQUIRE(m.state(t).decisions == m.state(s).decisions);
      }
    }
  }
}

TEST_CASE("restricted observation mode only sees decision and verdict") {
  BuildOptions o;
  o.obs = ObsMode::VerdictAndOwnDecision;
  const auto m = build_model(ProtocolId::Centralised, 1, o);
  for (std::size_t a = 0; a < 3; ++a) CHECK(m.num_classes(a) <= 6);
  for (StateId s = 0; s < m.size(); ++s) {
    for (StateId t = 0; t < m.size(); ++t) {
      const bool same = m.decision(s, 0) == m.decision(t, 0) && m.verdict(s) == m.verdict(t);
      REQUIRE(obs_equiv(m, 0, s, t) == same);
    }
  }
}

TEST_CASE("export round-trips and is byte-stable") {
  const auto a = build_model(ProtocolId::DcpSum, 1);
  const auto b = build_model(ProtocolId::DcpSum, 1);
  const auto pa = temp_file("jb_model_a.json");
  const auto pb = temp_file("jb_model_b.json");
  export_model(a, pa);
  export_model(b, pb);
  CHECK(slurp(pa) == slurp(pb));
  const auto back = import_model(pa);
  CHECK(back == a);
  CHECK(back.size() == 1024);
  const auto doc = nlohmann::json::parse(slurp(pa));
  CHECK(doc["states"].size() == a.size());
  CHECK(doc["init"].size() == 512);
  CHECK(doc["agents"] == nlohmann::json::array({"J0", "J1", "J2"}));
  CHECK_THROWS_AS(export_model(KripkeModel{}, temp_file("jb_empty.json")), ValidationError);
  CHECK_THROWS_AS(export_model(a, "/nonexistent-dir/x.json"), IoError);
  std::filesystem::remove(pa);
  std::filesystem::remove(pb);
}

TEST_CASE("import rejects malformed documents") {
  auto doc = model_to_json(build_model(ProtocolId::ThreeJudgesMM, 1));
  auto bad = doc;
  bad["verdict_domain"] = "ternary";
  CHECK_THROWS_AS(model_from_json(bad), SchemaError);
  bad = doc;
  bad["states"][0]["labels"][0] = "w=1";
  CHECK_THROWS_AS(model_from_json(bad), SchemaError);
  bad = doc;
  bad.erase("init");
  CHECK_THROWS_AS(model_from_json(bad), SchemaError);
}

TEST_CASE("invalid structures are rejected") {
  std::vector<StateData> two(2);
  std::vector<std::vector<std::uint32_t>> obs{{0, 0}};
  CHECK_THROWS_AS(KripkeModel(1, VerdictDomain::Binary, two, obs, {0}, {{0, 0}, {1, 1}}), ValidationError);
  CHECK_THROWS_AS(KripkeModel(1, VerdictDomain::Binary, two, obs, {0}, {{0, 1}}), ValidationError);
  CHECK_THROWS_AS(KripkeModel(1, VerdictDomain::Binary, two, obs, {}, {{0, 1}, {1, 1}}), ValidationError);
  CHECK_THROWS_AS(KripkeModel(1, VerdictDomain::Binary, two, {{0, 2}}, {0}, {{0, 1}, {1, 1}}), ValidationError);
  CHECK_NOTHROW(KripkeModel(1, VerdictDomain::Binary, two, obs, {0}, {{0, 1}, {1, 1}}));
}

TEST_CASE("atoms parse and validate against the domain") {
  CHECK(Atom::parse("v=unknown") == Atom::verdict(kPending));
  CHECK(Atom::parse("d2=1") == Atom::decision(2, 1));
  CHECK(Atom::parse("v=3").str() == "v=3");
  CHECK_THROWS_AS(Atom::parse("d1=2"), ParameterError);
  CHECK_THROWS_AS(Atom::parse("x=1"), ParameterError);
  const auto bin = build_model(ProtocolId::ThreeJudgesMM, 1);
  const auto cnt = build_model(ProtocolId::DcpSum, 1);
  CHECK_THROWS_AS(bin.validate_atom(Atom::verdict(2)), ValidationError);
  CHECK_NOTHROW(cnt.validate_atom(Atom::verdict(3)));
  CHECK_THROWS_AS(cnt.validate_atom(Atom::verdict(4)), ValidationError);
  CHECK_THROWS_AS(bin.validate_atom(Atom::decision(3, 0)), ValidationError);
}
