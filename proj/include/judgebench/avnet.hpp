#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

// Broadcast-only majority protocol over a prime-order subgroup of Z_p^*.
// Judges are 0..2n; steps 2 and 3 take 2n+1 sequential rounds each.
namespace judgebench::avnet {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
// Deterministic for all 64-bit inputs.
bool is_prime(std::uint64_t n);

struct GroupParams {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  std::uint64_t g = 0;

  std::uint64_t exp(std::uint64_t e) const { return powmod(g, e, p); }
  std::uint64_t inv(std::uint64_t a) const;
  friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

// Throws ParameterError unless p, q are prime, q | p-1, g != 1 and g^q = 1.
GroupParams setup_group(std::uint64_t p, std::uint64_t q, std::uint64_t g);
// A preset name, or "p:q:g".
GroupParams setup_group(std::string_view preset);
std::vector<std::string> preset_names();
// Set when q is below 2^16.
std::optional<std::string> group_warning(const GroupParams& gp);

// Placeholder for a proof of knowledge of x_i. Parties are honest, so it
// always verifies.
struct ZkProof {
  std::size_t judge = 0;
  std::uint64_t statement = 0;  // g^x_i
  bool verify() const noexcept { return true; }
};

struct AvNetRound1 {
  std::size_t n = 0;
  std::vector<std::uint64_t> x;       // secrets, in [1, q-1]
  std::vector<std::uint64_t> gx;      // g^x_i
  std::vector<std::uint64_t> gy;      // g^y_i
  std::vector<std::uint64_t> nonce;   // g^(x_i y_i)
  std::vector<ZkProof> proofs;

  std::size_t judges() const noexcept { return x.size(); }
};

struct AvNetShuffle {
  std::vector<std::uint64_t> majority_values;  // M = {n+1..2n+1}
  // perms[i][k] = p_i(M[k]).
  std::vector<std::vector<std::uint64_t>> perms;
  // rounds[0] = g^k in M order; rounds[r] after judge r-1 has acted.
  std::vector<std::vector<std::uint64_t>> rounds;

  const std::vector<std::uint64_t>& final_set() const { return rounds.back(); }
};

struct AvNetVotes {
  std::vector<int> votes;
  // z[r-1][i] = z_{i,r}
  std::vector<std::vector<std::uint64_t>> z;
  std::uint64_t product = 0;
};

// Throws ParameterError on a zero or out-of-range secret, an even judge count,
// or q <= judge count.
AvNetRound1 step1_nonces(const GroupParams& gp, const std::vector<std::uint64_t>& secrets);
AvNetRound1 step1_nonces(const GroupParams& gp, std::size_t n, std::mt19937_64& rng);

// Throws ParameterError unless each permutation is a bijection on M.
AvNetShuffle step2_shuffle(const GroupParams& gp, const AvNetRound1& r1,
                           const std::vector<std::vector<std::uint64_t>>& perms);
AvNetShuffle step2_shuffle(const GroupParams& gp, const AvNetRound1& r1, std::mt19937_64& rng);

struct Step3 {
  int verdict = 0;
  AvNetVotes votes;
};

Step3 step3_votes_and_verdict(const GroupParams& gp, const AvNetRound1& r1, const AvNetShuffle& shuffle,
                              const std::vector<int>& votes);

struct Transcript {
  GroupParams group;
  AvNetRound1 round1;
  AvNetShuffle shuffle;
  AvNetVotes votes;
  int verdict = 0;
};

// All three steps with seeded secrets and permutations.
Transcript run(const GroupParams& gp, const std::vector<int>& votes, std::mt19937_64& rng);

nlohmann::json transcript_to_json(const Transcript& t);

}  // namespace judgebench::avnet
