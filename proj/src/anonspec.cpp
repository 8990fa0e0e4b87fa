#include "judgebench/anonspec.hpp"

#include "judgebench/core.hpp"
#include "judgebench/error.hpp"

namespace judgebench::anonspec {

namespace {

using kripke::Atom;
using Op = Formula::Op;

Formula v_is(int value) { return Formula::atom(Atom::verdict(value)); }
Formula d_is(int judge, int bit) { return Formula::atom(Atom::decision(judge, bit)); }

void require_n(std::size_t n, std::size_t min) {
  if (n < min) throw ParameterError("n must be at least " + std::to_string(min) + ", got " + std::to_string(n));
}

std::string pair_name(const char* family, int i, int j) {
  return std::string(family) + "[i=" + std::to_string(i) + ",j=" + std::to_string(j) + "]";
}

Formula never(const Formula& bad) { return Formula::unary(Op::AG, Formula::implies(bad, Formula::falsity())); }

// Lexicographic subsets of {0..total-1} of the given size.
void subsets(int total, int size, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == size) {
    out.push_back(cur);
    return;
  }
  for (int k = start; k < total; ++k) {
    cur.push_back(k);
    subsets(total, size, k + 1, cur, out);
    cur.pop_back();
  }
}

Formula profile_formula(const core::DecisionVector& d) {
  std::vector<Formula> parts;
  for (std::size_t k = 0; k < d.size(); ++k) parts.push_back(d_is(static_cast<int>(k), d[k]));
  return Formula::conj_all(parts);
}

}  // namespace

std::string_view to_string(Expected e) {
  switch (e) {
    case Expected::Hold: return "hold";
    case Expected::Fail: return "fail";
    case Expected::Unknown: return "unknown";
  }
  return "unknown";
}

Expected expected_from_string(std::string_view s) {
  if (s == "hold") return Expected::Hold;
  if (s == "fail") return Expected::Fail;
  if (s == "unknown") return Expected::Unknown;
  throw ParameterError("expected must be hold, fail or unknown, got '" + std::string(s) + "'");
}

Formula verdict_equals_decision(int i) {
  return Formula::disj(Formula::conj(d_is(i, 0), v_is(0)), Formula::conj(d_is(i, 1), v_is(1)));
}

Formula decisions_differ(int a, int b) {
  return Formula::disj(Formula::conj(d_is(a, 1), d_is(b, 0)), Formula::conj(d_is(a, 0), d_is(b, 1)));
}

Formula ignorant_of(int i, int j) {
  return Formula::conj(Formula::negate(Formula::knows(i, d_is(j, 1))),
                       Formula::negate(Formula::knows(i, d_is(j, 0))));
}

Formula gen_functionality(std::size_t n, VerdictDomain domain) {
  require_n(n, 1);
  const int judges = static_cast<int>(2 * n + 1);
  std::vector<Formula> terms;
  for (int i = 0; i < judges; ++i) {
    std::vector<Formula> known;
    if (domain == VerdictDomain::Binary) {
      known = {Formula::knows(i, v_is(1)), Formula::knows(i, v_is(0))};
    } else {
      for (int c = 0; c <= judges; ++c) known.push_back(Formula::knows(i, v_is(c)));
    }
    terms.push_back(Formula::unary(Op::AF, Formula::disj_all(known)));
  }
  return Formula::conj_all(terms);
}

std::vector<Formula> gen_correctness(std::size_t n, VerdictDomain domain) {
  require_n(n, 1);
  const int judges = static_cast<int>(2 * n + 1);
  std::vector<Formula> out;
  if (domain == VerdictDomain::Count) {
    for (const auto& d : core::all_decision_vectors(judges)) {
      out.push_back(never(Formula::conj_all({profile_formula(d), Formula::negate(v_is(kripke::kPending)),
                                              Formula::negate(v_is(static_cast<int>(d.ones())))})));
    }
    return out;
  }
  std::vector<std::vector<int>> sets;
  std::vector<int> cur;
  subsets(judges, static_cast<int>(n + 1), 0, cur, sets);
  for (int bit = 1; bit >= 0; --bit) {
    for (const auto& s : sets) {
      std::vector<Formula> parts;
      for (int k : s) parts.push_back(d_is(k, bit));
      parts.push_back(v_is(1 - bit));
      out.push_back(never(Formula::conj_all(parts)));
    }
  }
  return out;
}

Formula gen_conditional(int i, int j, const Formula& condition) {
  if (i == j) throw ParameterError("observer and target must differ (both " + std::to_string(i) + ")");
  if (i < 0 || j < 0) throw ParameterError("judge indices must be non-negative");
  return Formula::unary(Op::AG, Formula::implies(condition, ignorant_of(i, j)));
}

std::vector<SuiteEntry> gen_three_judges_suite(Expected leader) {
  std::vector<SuiteEntry> out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      out.push_back({pair_name("anon", i, j), gen_conditional(i, j, verdict_equals_decision(i)),
                     i == 0 ? leader : Expected::Hold});
    }
  }
  return out;
}

std::vector<SuiteEntry> gen_three_judges_unconditioned() {
  std::vector<SuiteEntry> out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      out.push_back({pair_name("anon-raw", i, j), gen_conditional(i, j, Formula::truth()), Expected::Fail});
    }
  }
  return out;
}

Formula centralised_leader_formula(std::size_t pair, bool conditioned) {
  if (pair < 1) throw ParameterError("pairs are numbered from 1");
  const int lo = static_cast<int>(2 * pair - 1);
  const int hi = lo + 1;
  const auto body = Formula::conj(ignorant_of(0, lo), ignorant_of(0, hi));
  if (!conditioned) return Formula::unary(Op::AG, body);
  return Formula::unary(Op::AG, Formula::implies(decisions_differ(lo, hi), body));
}

std::vector<SuiteEntry> gen_centralised_suite(std::size_t n) {
  require_n(n, 2);
  const int judges = static_cast<int>(2 * n + 1);
  std::vector<SuiteEntry> out;
  for (int i = 1; i < judges; ++i) {
    for (int j = 0; j < judges; ++j) {
      if (i == j) continue;
      out.push_back({pair_name("nonleader", i, j), gen_conditional(i, j, Formula::truth()), Expected::Hold});
    }
  }
  for (std::size_t p = 1; p <= n; ++p) {
    out.push_back({"leader[pair=" + std::to_string(p) + "]", centralised_leader_formula(p, true), Expected::Hold});
  }
  return out;
}

std::vector<SuiteEntry> gen_centralised_leader_raw(std::size_t n) {
  require_n(n, 1);
  std::vector<SuiteEntry> out;
  for (std::size_t p = 1; p <= n; ++p) {
    out.push_back({"leader-raw[pair=" + std::to_string(p) + "]", centralised_leader_formula(p, false), Expected::Fail});
  }
  return out;
}

Formula dcp_premise(std::size_t n, int i) {
  require_n(n, 1);
  const int two_n = static_cast<int>(2 * n);
  std::vector<Formula> parts;
  for (int c = 2; c < two_n; ++c) parts.push_back(v_is(c));
  parts.push_back(Formula::conj(v_is(1), d_is(i, 0)));
  parts.push_back(Formula::conj(v_is(two_n), d_is(i, 1)));
  return Formula::disj_all(parts);
}

std::vector<SuiteEntry> gen_dcp_suite(std::size_t n) {
  require_n(n, 1);
  const int judges = static_cast<int>(2 * n + 1);
  std::vector<SuiteEntry> out;
  for (int i = 0; i < judges; ++i) {
    for (int j = 0; j < judges; ++j) {
      if (i == j) continue;
      out.push_back({pair_name("dcp", i, j), gen_conditional(i, j, dcp_premise(n, i)), Expected::Hold});
    }
  }
  return out;
}

Formula compatibility_premise(std::size_t n, int i, int j) {
  require_n(n, 1);
  const auto total = 2 * n + 1;
  std::vector<Formula> parts;
  for (int b = 0; b <= 1; ++b) {
    for (int v = 0; v <= 1; ++v) {
      if (core::compatible(i, j, b, 0, v, total) && core::compatible(i, j, b, 1, v, total)) {
        parts.push_back(Formula::conj(d_is(i, b), v_is(v)));
      }
    }
  }
  return Formula::disj_all(parts);
}

std::vector<SuiteEntry> gen_perfect_individual(std::size_t n, bool leader_conditioned) {
  require_n(n, 1);
  const int judges = static_cast<int>(2 * n + 1);
  std::vector<SuiteEntry> out;
  for (int i = 0; i < judges; ++i) {
    for (int j = 0; j < judges; ++j) {
      if (i == j) continue;
      auto premise = compatibility_premise(n, i, j);
      if (leader_conditioned && i == 0) {
        const int lo = j % 2 == 1 ? j : j - 1;
        premise = Formula::conj(premise, decisions_differ(lo, lo + 1));
      }
      out.push_back({pair_name(leader_conditioned ? "perfect-leader" : "perfect", i, j),
                     gen_conditional(i, j, premise), Expected::Unknown});
    }
  }
  return out;
}

std::vector<SuiteEntry> gen_total_anonymity(std::size_t n, VerdictDomain domain) {
  require_n(n, 1);
  const auto judges = 2 * n + 1;
  std::vector<SuiteEntry> out;
  const auto profiles = core::all_decision_vectors(judges);
  for (std::size_t i = 0; i < judges; ++i) {
    for (const auto& d : profiles) {
      const int v = domain == VerdictDomain::Binary ? core::majority(d) : static_cast<int>(d.ones());
      const auto premise = Formula::conj(d_is(static_cast<int>(i), d[i]), v_is(v));
      const auto f = Formula::unary(
          Op::AG, Formula::implies(premise, Formula::possible(static_cast<int>(i), profile_formula(d))));
      out.push_back({"total[i=" + std::to_string(i) + ",d=" + d.str() + "]", f, Expected::Unknown});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::string> builtin_suite_ids() {
  return {"functionality",  "three-judges",       "three-judges-unconditioned", "centralised",
          "centralised-leader-raw", "dcp",        "perfect-individual",         "perfect-individual-leader",
          "total-anonymity"};
}

namespace {

using protocols::ProtocolId;

[[noreturn]] void unsupported(std::string_view id, ProtocolId p, std::size_t n) {
  throw ParameterError("suite '" + std::string(id) + "' does not apply to " + std::string(protocols::to_string(p)) +
                       " with n=" + std::to_string(n));
}

void set_all(std::vector<SuiteEntry>& suite, Expected e) {
  for (auto& s : suite) s.expected = e;
}

}  // namespace

std::vector<SuiteEntry> builtin_suite(std::string_view id, ProtocolId protocol, std::size_t n) {
  const auto domain = kripke::verdict_domain_for(protocol);
  const bool centralised = protocol == ProtocolId::Centralised;
  if (id == "functionality") {
    std::vector<SuiteEntry> out{{"functionality", gen_functionality(n, domain), Expected::Hold}};
    std::size_t k = 0;
    for (auto& f : gen_correctness(n, domain)) {
      out.push_back({"correctness[" + std::to_string(k++) + "]", std::move(f), Expected::Hold});
    }
    return out;
  }
  if (id == "three-judges") {
    if (n != 1 || protocol == ProtocolId::DcpSum) unsupported(id, protocol, n);
    return gen_three_judges_suite(centralised ? Expected::Fail : Expected::Hold);
  }
  if (id == "three-judges-unconditioned") {
    if (n != 1 || protocol == ProtocolId::DcpSum) unsupported(id, protocol, n);
    return gen_three_judges_unconditioned();
  }
  if (id == "centralised") {
    if (!centralised) unsupported(id, protocol, n);
    if (n >= 2) return gen_centralised_suite(n);
    auto out = gen_three_judges_suite(Expected::Fail);
    out.push_back({"leader[pair=1]", centralised_leader_formula(1, true), Expected::Hold});
    return out;
  }
  if (id == "centralised-leader-raw") {
    if (!centralised) unsupported(id, protocol, n);
    return gen_centralised_leader_raw(n);
  }
  if (id == "dcp") {
    if (protocol != ProtocolId::DcpSum) unsupported(id, protocol, n);
    return gen_dcp_suite(n);
  }
  if (id == "perfect-individual") {
    if (protocol == ProtocolId::DcpSum) unsupported(id, protocol, n);
    auto out = gen_perfect_individual(n, false);
    for (auto& e : out) {
      const bool leader = centralised && e.name.starts_with("perfect[i=0,");
      e.expected = leader ? Expected::Fail : Expected::Hold;
    }
    return out;
  }
  if (id == "perfect-individual-leader") {
    if (!centralised) unsupported(id, protocol, n);
    auto out = gen_perfect_individual(n, true);
    set_all(out, Expected::Hold);
    return out;
  }
  if (id == "total-anonymity") {
    auto out = gen_total_anonymity(n, domain);
    for (auto& e : out) {
      const bool leader = centralised && e.name.starts_with("total[i=0,");
      e.expected = leader ? Expected::Unknown : Expected::Hold;
    }
    return out;
  }
  throw ParameterError("unknown suite '" + std::string(id) + "'");
}

nlohmann::json suite_to_json(const std::vector<SuiteEntry>& suite) {
  auto out = nlohmann::json::array();
  for (const auto& e : suite) {
    out.push_back({{"name", e.name}, {"formula", e.formula.str()}, {"expected", std::string(to_string(e.expected))}});
  }
  return out;
}

}  // namespace judgebench::anonspec
