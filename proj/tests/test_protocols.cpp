#include <doctest.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "judgebench/error.hpp"
#include "judgebench/protocols.hpp"

using namespace judgebench;
using namespace judgebench::protocols;
using core::DecisionVector;
using core::Verdict;

namespace {

MmRandomness mm_bits(int b_and, int b_or) {
  MmRandomness r;
  r.b_and = b_and;
  r.b_or = b_or;
  for (auto& pkg : r.ot) pkg = ot::ot_init(ot::BitString({0}), ot::BitString({1}), 0);
  return r;
}

std::set<std::string> labels_seen(const AgentView& v) {
  std::set<std::string> out;
  for (const auto& o : v.observed) out.insert(o.label);
  return out;
}

}  // namespace

TEST_CASE("share sets") {
  for (int b = 0; b <= 1; ++b) {
    for (int x = 0; x <= 1; ++x) {
      for (int y = 0; y <= 1; ++y) {
        const auto s = make_share_set(b, x, y);
        CHECK((s.b_and ^ s.b_and2) == b);
        CHECK((s.b_or ^ s.b_or2) == 1 - b);
        CHECK_NOTHROW(validate_share_set(s, b));
      }
    }
  }
  CHECK_THROWS_AS(validate_share_set(ShareSet{1, 0, 1, 0}, 1), ParameterError);
}

TEST_CASE("three judges examples") {
  CHECK(run_three_judges_mm(DecisionVector({0, 1, 1}), mm_bits(0, 1)).verdict == Verdict::Guilty);
  CHECK(run_three_judges_mm(DecisionVector({1, 0, 0}), mm_bits(1, 0)).verdict == Verdict::Innocent);
  const auto r = run_three_judges_mm(DecisionVector({1, 1, 0}), mm_bits(1, 1));
  CHECK(r.verdict == Verdict::Guilty);
  CHECK_THROWS_AS(run_three_judges_mm(DecisionVector({1, 1, 0, 0, 1}), mm_bits(0, 0)), ParameterError);
}

TEST_CASE("three judges is functional in both OT modes, the swapped rule is not") {
  for (auto mode : {OtMode::Ideal, OtMode::Transcript}) {
    EnumerationRequest req;
    req.protocol = ProtocolId::ThreeJudgesMM;
    req.options.ot = mode;
    std::size_t runs = 0, bad = 0;
    enumerate_runs(req, [&](const RunRecord& r) {
      ++runs;
      bad += r.outcome != core::majority(r.decisions);
    });
    CHECK(runs == (mode == OtMode::Ideal ? 8u * 4 : 8u * 16384));
    CHECK(bad == 0);
  }
  RunOptions printed;
  printed.ot = OtMode::Ideal;
  printed.announce = AnnounceRule::Printed;
  std::size_t bad = 0;
  for (const auto& dv : core::all_decision_vectors(3)) {
    for (int x = 0; x <= 1; ++x) {
      for (int y = 0; y <= 1; ++y) {
        bad += run_three_judges_mm(dv, mm_bits(x, y), printed).outcome != core::majority(dv);
      }
    }
  }
  CHECK(bad > 0);
}

TEST_CASE("three judges views stay inside their channels") {
  RunOptions ideal;
  ideal.ot = OtMode::Ideal;
  const auto r = run_three_judges_mm(DecisionVector({0, 1, 0}), mm_bits(1, 0), ideal);
  CHECK(labels_seen(r.views[0]) == std::set<std::string>{"ba", "ca", "verdict"});
  CHECK(labels_seen(r.views[1]) == std::set<std::string>{"verdict"});
  CHECK(labels_seen(r.views[2]) == std::set<std::string>{"bc_and", "bc_or", "verdict"});
  CHECK(r.views[0].own_randomness.empty());
  CHECK(r.views[2].own_randomness.empty());
  CHECK(r.views[1].own_randomness.size() == 2);
  for (const auto& v : r.views) CHECK(v.verdict == Verdict::Innocent);
}

TEST_CASE("every observation comes from a visible event") {
  for (auto protocol : {ProtocolId::ThreeJudgesMM, ProtocolId::Centralised, ProtocolId::DcpSum}) {
    EnumerationRequest req;
    req.protocol = protocol;
    req.options.ot = OtMode::Transcript;
    req.sampled = Sampled{3, 11};
    enumerate_runs(req, [&](const RunRecord& r) {
      for (const auto& v : r.views) {
        std::size_t visible = 0;
        for (const auto& e : r.events) visible += e.visible(v.agent);
        REQUIRE(visible == v.observed.size());
        for (const auto& o : v.observed) {
          const bool found = std::any_of(r.events.begin(), r.events.end(), [&](const TraceEvent& e) {
            return e.visible(v.agent) && e.round == o.round && e.label == o.label && e.payload == o.payload;
          });
          REQUIRE(found);
        }
      }
      for (std::size_t i = 1; i < r.events.size(); ++i) REQUIRE(r.events[i - 1].round <= r.events[i].round);
    });
  }
}

TEST_CASE("centralised examples") {
  auto run = [](const char* bits) {
    const auto dv = DecisionVector::parse(bits);
    CentralisedRandomness rnd;
    rnd.pairs.resize(dv.size() / 2);
    RunOptions o;
    o.ot = OtMode::Ideal;
    return run_centralised(dv, rnd, o);
  };
  CHECK(run("11001").verdict == Verdict::Guilty);
  CHECK(run("01010").verdict == Verdict::Innocent);
  const auto r = run("011");
  CHECK(r.verdict == Verdict::Guilty);
  REQUIRE(r.pair_aggregates.size() == 1);
  CHECK(r.pair_aggregates[0] == std::array<int, 2>{1, 1});
  CHECK_THROWS_AS(run("0110"), ParameterError);
}

TEST_CASE("centralised is functional and leaks equal pairs to the leader") {
  for (std::size_t n : {1u, 2u}) {
    for (auto mode : {OtMode::Ideal, OtMode::Transcript}) {
      if (n == 2 && mode == OtMode::Transcript) continue;
      EnumerationRequest req;
      req.protocol = ProtocolId::Centralised;
      req.n = n;
      req.options.ot = mode;
      std::size_t bad = 0, runs = 0;
      enumerate_runs(req, [&](const RunRecord& r) {
        ++runs;
        bad += r.outcome != core::majority(r.decisions);
        for (std::size_t p = 1; p <= n; ++p) {
          const int lo = r.decisions[2 * p - 1], hi = r.decisions[2 * p];
          const auto agg = r.pair_aggregates[p - 1];
          if (lo == hi) {
            REQUIRE(agg == std::array<int, 2>{lo, lo});
          } else {
            REQUIRE(agg == std::array<int, 2>{0, 1});
          }
        }
      });
      CHECK(runs == count_runs(req));
      CHECK(bad == 0);
    }
  }
}

TEST_CASE("dcp examples") {
  const auto r = run_dcp_sum(DecisionVector({1, 0, 1}), {1, 3, 2});
  REQUIRE(r.dcp);
  CHECK(r.dcp->announcements == std::vector<int>{0, 2, 0});
  CHECK(r.outcome == 2);
  CHECK(r.verdict == Verdict::Guilty);
  CHECK(run_dcp_sum(DecisionVector({0, 0, 0}), {3, 1, 2}).outcome == 0);
  CHECK(run_dcp_sum(DecisionVector({1, 1, 1, 1, 1}), {0, 5, 2, 4, 1}).outcome == 5);
  CHECK_THROWS_AS(run_dcp_sum(DecisionVector({1, 0, 1}), {1, 4, 2}), ParameterError);
  CHECK_THROWS_AS(run_dcp_sum(DecisionVector({1, 0, 1}), {1, 2}), ParameterError);
}

TEST_CASE("dcp counts exactly and telescopes") {
  EnumerationRequest req;
  req.protocol = ProtocolId::DcpSum;
  CHECK(count_runs(req) == 512);
  std::size_t runs = 0;
  enumerate_runs(req, [&](const RunRecord& r) {
    ++runs;
    int sum = 0;
    for (int a : r.dcp->announcements) sum += a;
    REQUIRE(sum % r.dcp->modulus == static_cast<int>(r.decisions.ones()));
    REQUIRE(r.outcome == static_cast<int>(r.decisions.ones()));
    for (const auto& v : r.views) {
      REQUIRE(v.own_randomness.size() == 2);
      REQUIRE(v.observed.size() == 3);
    }
  });
  CHECK(runs == 512);
}

TEST_CASE("enumeration counts, bounds and determinism") {
  EnumerationRequest req;
  req.protocol = ProtocolId::ThreeJudgesMM;
  req.decisions = DecisionVector({1, 0, 1});
  CHECK(count_runs(req) == 4u * 4096u);
  req.bound = 100;
  CHECK_THROWS_AS(count_runs(req), CapacityError);

  EnumerationRequest s;
  s.protocol = ProtocolId::DcpSum;
  s.n = 2;
  s.sampled = Sampled{10, 99};
  std::vector<std::vector<LabeledValue>> first, second;
  enumerate_runs(s, [&](const RunRecord& r) { first.push_back(r.randomness); });
  enumerate_runs(s, [&](const RunRecord& r) { second.push_back(r.randomness); });
  CHECK(first.size() == 320);
  CHECK(first == second);

  std::multiset<std::string> serial, parallel;
  std::mutex mu;
  enumerate_runs(s, [&](const RunRecord& r) { serial.insert(run_to_json(r).dump()); });
  enumerate_runs_parallel(s, 3, [&](const RunRecord& r) {
    std::lock_guard lock(mu);
    parallel.insert(run_to_json(r).dump());
  });
  CHECK(serial == parallel);
}

TEST_CASE("trace documents carry the fixed fields") {
  const auto r = run_dcp_sum(DecisionVector({1, 0, 1}), {1, 3, 2});
  const auto doc = run_to_json(r);
  for (const char* key : {"protocol", "n", "decisions", "randomness", "events", "views", "verdict"}) {
    CHECK(doc.contains(key));
  }
  CHECK(doc["protocol"] == "dcp_sum");
  CHECK(doc["events"].size() == 3);
  CHECK(doc["views"][1]["randomness"]["s0"] == 1);
}
