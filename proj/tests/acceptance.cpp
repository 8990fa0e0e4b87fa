// One line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "judgebench/anonspec.hpp"
#include "judgebench/avnet.hpp"
#include "judgebench/cli.hpp"
#include "judgebench/core.hpp"
#include "judgebench/kripke.hpp"
#include "judgebench/mck.hpp"
#include "judgebench/ot.hpp"
#include "judgebench/protocols.hpp"
#include "oracle.hpp"

using namespace judgebench;
using protocols::ProtocolId;

namespace {

struct Verdict {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    std::ostringstream msg;
    msg << "took " << secs << " s, limit " << limit_s << " s";
    v.require(false, msg.str());
  }
  std::printf("criterion %2d: %s  %s:%s (%.2f s)\n", id, v.ok ? "PASS" : "FAIL", title, v.detail.str().c_str(), secs);
  std::fflush(stdout);
  failures += !v.ok;
}

struct Tally {
  std::uint64_t runs = 0, wrong = 0;
};

Tally functional_runs(const protocols::EnumerationRequest& req) {
  Tally t;
  protocols::enumerate_runs(req, [&](const protocols::RunRecord& r) {
    ++t.runs;
    t.wrong += r.outcome != core::majority(r.decisions);
  });
  return t;
}

bool all_hold(mck::Checker& ck, const std::vector<anonspec::SuiteEntry>& suite) {
  for (const auto& e : suite) {
    if (!ck.check(e.formula).holds_on_init) return false;
  }
  return true;
}

std::size_t count_holding(mck::Checker& ck, const std::vector<anonspec::SuiteEntry>& suite) {
  std::size_t c = 0;
  for (const auto& e : suite) c += ck.check(e.formula).holds_on_init;
  return c;
}

kripke::KripkeModel model_from_scenario(const char* file) {
  const auto s = cli::load_scenario(std::filesystem::path(JUDGEBENCH_SCENARIOS) / file);
  kripke::BuildOptions o;
  o.obs = s.obs_mode;
  o.ot = s.ot;
  o.decisions = s.decisions;
  o.sampled = s.sampled;
  return kripke::build_model(s.protocol, s.n, o);
}

}  // namespace

int main() {
  criterion(1, "oblivious transfer delivers m_c", 1.0, [](Verdict& v) {
    std::uint64_t cases = 0, bad = 0;
    for (std::size_t k = 1; k <= 3; ++k) {
      const std::uint64_t span = 1ULL << k;
      for (std::uint64_t r0 = 0; r0 < span; ++r0)
        for (std::uint64_t r1 = 0; r1 < span; ++r1)
          for (int d = 0; d <= 1; ++d) {
            const auto pkg = ot::ot_init(ot::BitString::from_mask(k, r0), ot::BitString::from_mask(k, r1), d);
            for (std::uint64_t m0 = 0; m0 < span; ++m0)
              for (std::uint64_t m1 = 0; m1 < span; ++m1)
                for (int c = 0; c <= 1; ++c) {
                  const auto a = ot::BitString::from_mask(k, m0);
                  const auto b = ot::BitString::from_mask(k, m1);
                  ++cases;
                  bad += ot::ot_execute(a, b, c, pkg).delivered != (c ? b : a);
                }
          }
    }
    v.detail << " " << cases << " transfers, " << bad << " wrong";
    v.require(bad == 0, "every transfer delivers m_c");
  });

  criterion(2, "three-judge protocol computes the majority", 5.0, [](Verdict& v) {
    protocols::EnumerationRequest req;
    req.protocol = ProtocolId::ThreeJudgesMM;
    req.options.ot = protocols::OtMode::Transcript;
    const auto full = functional_runs(req);
    v.detail << " " << full.runs << " runs, " << full.wrong << " wrong";
    v.require(full.runs == 8u * 16384u, "8 x 16384 runs");
    v.require(full.wrong == 0, "no wrong verdicts");
    req.options.announce = protocols::AnnounceRule::Printed;
    const auto printed = functional_runs(req);
    v.detail << "; swapped announcement rule: " << printed.wrong << " wrong";
    v.require(printed.wrong > 0, "swapped rule must break functionality");
  });

  criterion(3, "centralised protocol computes the majority", 60.0, [](Verdict& v) {
    for (std::size_t n : {1u, 2u}) {
      for (auto mode : {protocols::OtMode::Ideal, protocols::OtMode::Transcript}) {
        if (n == 2 && mode == protocols::OtMode::Transcript) continue;
        protocols::EnumerationRequest req;
        req.protocol = ProtocolId::Centralised;
        req.n = n;
        req.options.ot = mode;
        const auto t = functional_runs(req);
        v.detail << " " << 2 * n + 1 << " judges/" << protocols::to_string(mode) << ": " << t.runs << " runs, "
                 << t.wrong << " wrong;";
        v.require(t.runs == protocols::count_runs(req) && t.wrong == 0, "exhaustive and correct");
      }
    }
  });

  criterion(4, "dcp sum counts the guilty votes", 120.0, [](Verdict& v) {
    for (std::size_t n : {1u, 2u}) {
      protocols::EnumerationRequest req;
      req.protocol = ProtocolId::DcpSum;
      req.n = n;
      std::uint64_t runs = 0, wrong = 0;
      protocols::enumerate_runs(req, [&](const protocols::RunRecord& r) {
        ++runs;
        wrong += r.outcome != static_cast<int>(r.decisions.ones());
      });
      v.detail << " " << 2 * n + 1 << " judges: " << runs << " runs, " << wrong << " wrong;";
      v.require(runs == (n == 1 ? 512u : 248832u), "run count");
      v.require(wrong == 0, "count equals the number of guilty votes");
    }
  });

  criterion(5, "centralised anonymity on five judges", 0, [](Verdict& v) {
    const auto m = kripke::build_model(ProtocolId::Centralised, 2);
    mck::Checker ck(m);
    const auto suite = anonspec::gen_centralised_suite(2);
    std::size_t nonleader = 0, leader = 0;
    for (const auto& e : suite) {
      const bool holds = ck.check(e.formula).holds_on_init;
      (e.name.starts_with("leader") ? leader : nonleader) += holds;
    }
    v.detail << " " << m.size() << " states; non-leader " << nonleader << "/16 hold, conditioned leader " << leader
             << "/2 hold";
    v.require(nonleader == 16 && leader == 2, "all suite formulas hold");
    for (std::size_t p = 1; p <= 2; ++p) {
      const auto f = anonspec::centralised_leader_formula(p, false);
      const auto r = ck.check(f);
      v.require(!r.holds_on_init, "unconditioned leader formula fails");
      if (r.holds_on_init) continue;
      const auto ev = mck::explain(m, f, r);
      const bool extracted = ev.kind == mck::Evidence::Kind::Counterexample && ev.state &&
                             m.decision(*ev.state, 2 * p - 1) == m.decision(*ev.state, 2 * p);
      v.detail << "; pair " << p << " counterexample at state " << (ev.state ? std::to_string(*ev.state) : "-");
      v.require(extracted, "counterexample state has equal pair decisions");
    }
  });

  criterion(6, "three-judge conditional anonymity", 0, [](Verdict& v) {
    const auto m = kripke::build_model(ProtocolId::ThreeJudgesMM, 1);
    mck::Checker ck(m);
    const auto held = count_holding(ck, anonspec::gen_three_judges_suite());
    const auto raw = count_holding(ck, anonspec::gen_three_judges_unconditioned());
    v.detail << " conditioned " << held << "/6 hold, unconditioned " << raw << "/6 hold";
    v.require(held == 6, "all conditioned formulas hold");
    v.require(raw == 0, "unconditioned formulas fail");
  });

  criterion(7, "dcp conditional anonymity and the extreme-count leak", 0, [](Verdict& v) {
    const auto m3 = kripke::build_model(ProtocolId::DcpSum, 1);
    mck::Checker c3(m3);
    const bool small = all_hold(c3, anonspec::gen_dcp_suite(1));
    const auto m5 = model_from_scenario("dcp-5.json");
    mck::Checker c5(m5);
    const bool large = all_hold(c5, anonspec::gen_dcp_suite(2));
    v.detail << " 3 judges " << (small ? "hold" : "FAIL") << ", 5 judges (" << m5.size() << " states) "
             << (large ? "hold" : "FAIL");
    v.require(small && large, "dcp suite holds");

    // Leak: at v=2n a judge who voted 0 knows everyone else voted 1.
    // The same claim with d_i=1 is false (one other judge voted 0) and is
    // checked to fail.
    for (std::size_t n : {1u, 2u}) {
      auto& ck = n == 1 ? c3 : c5;
      const int judges = static_cast<int>(2 * n + 1);
      const auto top = mck::Formula::atom(kripke::Atom::verdict(static_cast<int>(2 * n)));
      bool leak = true, literal = true;
      for (int i = 0; i < judges; ++i) {
        std::vector<mck::Formula> all_known;
        for (int j = 0; j < judges; ++j) {
          if (j == i) continue;
          all_known.push_back(mck::Formula::knows(i, mck::Formula::atom(kripke::Atom::decision(j, 1))));
        }
        const auto know = mck::Formula::conj_all(all_known);
        auto at = [&](int bit) {
          const auto premise = mck::Formula::conj(top, mck::Formula::atom(kripke::Atom::decision(i, bit)));
          return mck::Formula::unary(mck::Formula::Op::AG, mck::Formula::implies(premise, know));
        };
        leak = leak && ck.check(at(0)).holds_on_init;
        literal = literal && ck.check(at(1)).holds_on_init;
        // The premise must be reachable, or the leak would hold vacuously.
        const auto premise = mck::Formula::conj(top, mck::Formula::atom(kripke::Atom::decision(i, 0)));
        leak = leak && ck.check(premise).count() > 0;
      }
      v.detail << "; " << judges << " judges: leak with d_i=0 " << (leak ? "holds" : "FAILS") << ", with d_i=1 "
               << (literal ? "holds" : "fails");
      v.require(leak, "K_i(d_j=1) for all j at v=2n, d_i=0");
      v.require(!literal, "no such knowledge at v=2n, d_i=1");
    }
  });

  criterion(8, "perfect individual vs total anonymity", 0, [](Verdict& v) {
    for (auto p : {ProtocolId::ThreeJudgesMM, ProtocolId::Centralised}) {
      const auto m = kripke::build_model(p, 1);
      mck::Checker ck(m);
      const bool perfect = all_hold(ck, anonspec::gen_perfect_individual(1));
      const bool total = all_hold(ck, anonspec::gen_total_anonymity(1));
      v.detail << " " << protocols::to_string(p) << "/3: perfect " << (perfect ? "holds" : "fails") << ", total "
               << (total ? "holds" : "fails") << ";";
      v.require(perfect == total, "identical overall verdicts at 3 judges");
    }
    const auto m = kripke::build_model(ProtocolId::Centralised, 2);
    mck::Checker ck(m);
    const bool perfect = all_hold(ck, anonspec::gen_perfect_individual(2, true));
    const auto total = anonspec::gen_total_anonymity(2);
    const auto held = count_holding(ck, total);
    v.detail << " centralised/5: leader-conditioned perfect " << (perfect ? "holds" : "fails") << ", total "
             << held << "/" << total.size() << " hold";
    v.require(perfect, "perfect individual anonymity holds at 5 judges");
    v.require(held < total.size(), "some total anonymity formula fails at 5 judges");
  });

  criterion(9, "checker agrees with the naive oracle", 60.0, [](Verdict& v) {
    std::mt19937_64 rng(20240601);
    std::size_t agree = 0, total = 0, max_states = 0;
    for (int model = 0; model < 20; ++model) {
      const auto size = std::uniform_int_distribution<std::size_t>(1, 2000)(rng);
      const auto m = oracle::random_model(rng, size);
      max_states = std::max(max_states, m.size());
      mck::Checker ck(m);
      for (int i = 0; i < 50; ++i) {
        const auto f = oracle::random_formula(rng, 4, 3);
        ++total;
        agree += ck.eval(f) == oracle::naive_eval(m, f);
      }
    }
    v.detail << " " << agree << "/" << total << " formulas agree, largest model " << max_states << " states";
    v.require(agree == total, "full agreement");
  });

  criterion(10, "threshold formulas", 0, [](Verdict& v) {
    std::uint64_t checked = 0, bad = 0;
    for (std::size_t pairs = 1; pairs <= 3; ++pairs) {
      for (std::size_t k = 0; k <= 2 * pairs; ++k) {
        const auto f = core::build_threshold_formula(pairs, k);
        for (const auto& dv : core::all_decision_vectors(2 * pairs)) {
          ++checked;
          bad += core::eval_threshold_formula(f, dv) != core::threshold_oracle(dv, k);
        }
      }
    }
    const core::DecisionVector x({1, 0, 1, 0});
    const bool typo = core::eval_threshold_formula(core::printed_two_of_four(), x) != core::threshold_oracle(x, 2);
    v.detail << " " << checked << " evaluations, " << bad << " wrong; printed two-of-four on 1010 "
             << (typo ? "disagrees" : "agrees");
    v.require(bad == 0, "constructed formulas match the oracle");
    v.require(typo, "printed two-of-four disagrees on 1010");
  });

  criterion(11, "AV-net majority", 10.0, [](Verdict& v) {
    const auto gp = avnet::setup_group("medium");
    std::mt19937_64 rng(11);
    std::uint64_t runs = 0, bad = 0;
    for (std::size_t n : {1u, 2u}) {
      const std::size_t k = 2 * n + 1;
      for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
        std::vector<int> votes(k);
        for (std::size_t i = 0; i < k; ++i) votes[i] = static_cast<int>((mask >> i) & 1);
        const auto ones = static_cast<std::uint64_t>(std::popcount(mask));
        for (int draw = 0; draw < 20; ++draw) {
          const auto t = avnet::run(gp, votes, rng);
          ++runs;
          std::uint64_t nonce_product = 1, big_x = 1;
          for (auto z : t.round1.nonce) nonce_product = avnet::mulmod(nonce_product, z, gp.p);
          for (auto x : t.round1.x) big_x = avnet::mulmod(big_x, x, gp.q);
          const bool ok = t.verdict == (ones >= n + 1 ? 1 : 0) && nonce_product == 1 &&
                          t.votes.product == gp.exp(avnet::mulmod(ones, big_x, gp.q));
          bad += !ok;
        }
      }
    }
    v.detail << " " << runs << " runs, " << bad << " wrong";
    v.require(bad == 0, "verdict, nonce product and tally exponent");
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
