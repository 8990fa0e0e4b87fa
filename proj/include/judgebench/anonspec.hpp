#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "judgebench/kripke.hpp"
#include "judgebench/mck.hpp"
#include "judgebench/protocols.hpp"

// Formula families for the anonymity and functionality properties. The atom
// language only has v and d_i, so every derived predicate (majority, v = d_i,
// d_j != d_k, compatibility) is expanded into atoms here.
namespace judgebench::anonspec {

using kripke::VerdictDomain;
using mck::Formula;

enum class Expected { Hold, Fail, Unknown };

std::string_view to_string(Expected e);
Expected expected_from_string(std::string_view s);

struct SuiteEntry {
  std::string name;
  Formula formula;
  Expected expected = Expected::Unknown;
};

// (d_i=0 & v=0) | (d_i=1 & v=1)
Formula verdict_equals_decision(int i);
// (d_a=1 & d_b=0) | (d_a=0 & d_b=1)
Formula decisions_differ(int a, int b);
// !K_i(d_j=1) & !K_i(d_j=0)
Formula ignorant_of(int i, int j);

// Conjunction over all judges of AF(K_i(v=1) | K_i(v=0)); with the count
// domain, AF of the disjunction of K_i(v=c) over c in 0..2n+1.
Formula gen_functionality(std::size_t n, VerdictDomain domain = VerdictDomain::Binary);
// Binary: AG((d_S=1... & v=0) -> false) and the dual for every set S of n+1
// judges. Count: AG((D & !v=unknown & !v=|D|) -> false) for every profile D.
std::vector<Formula> gen_correctness(std::size_t n, VerdictDomain domain = VerdictDomain::Binary);

// AG(condition -> (!K_i(d_j=1) & !K_i(d_j=0)))
Formula gen_conditional(int i, int j, const Formula& condition);

// Six formulas AG((v=d_i) -> ...) for 3 judges.
std::vector<SuiteEntry> gen_three_judges_suite(Expected leader = Expected::Hold);
std::vector<SuiteEntry> gen_three_judges_unconditioned();

// Non-leader formulas for i >= 1 and the leader formula per pair, conditioned
// on the pair disagreeing. n >= 2.
std::vector<SuiteEntry> gen_centralised_suite(std::size_t n);
// Leader formulas with the premise dropped; the leader leak makes them fail.
std::vector<SuiteEntry> gen_centralised_leader_raw(std::size_t n);
Formula centralised_leader_formula(std::size_t pair, bool conditioned);

std::vector<SuiteEntry> gen_dcp_suite(std::size_t n);
Formula dcp_premise(std::size_t n, int i);

// comp(i, j, v) expanded over (d_i, v) combinations that leave both values
// of d_j compatible.
Formula compatibility_premise(std::size_t n, int i, int j);
// `leader_conditioned`: for observer 0 and a target in pair p, the premise
// also requires the pair to disagree.
std::vector<SuiteEntry> gen_perfect_individual(std::size_t n, bool leader_conditioned = false);

// For every judge i and profile d: AG((d_i=d(i) & v=maj(d)) -> P_i(profile=d)),
// the profile spelled out as a conjunction of decision atoms.
std::vector<SuiteEntry> gen_total_anonymity(std::size_t n, VerdictDomain domain = VerdictDomain::Binary);

// Suite ids usable from scenarios. Expectations depend on the protocol.
std::vector<std::string> builtin_suite_ids();
// Throws ParameterError for an unknown id or an unsupported combination.
std::vector<SuiteEntry> builtin_suite(std::string_view id, protocols::ProtocolId protocol, std::size_t n);

nlohmann::json suite_to_json(const std::vector<SuiteEntry>& suite);

}  // namespace judgebench::anonspec
