#include "judgebench/avnet.hpp"

#include <algorithm>
#include <array>
#include <charconv>

#include "judgebench/error.hpp"

namespace judgebench::avnet {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto b : bases) {
    if (n % b == 0) return n == b;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : bases) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t GroupParams::inv(std::uint64_t a) const {
  if (a % p == 0) throw ParameterError("zero has no inverse");
  return powmod(a, p - 2, p);
}

GroupParams setup_group(std::uint64_t p, std::uint64_t q, std::uint64_t g) {
  const auto tag = "(p=" + std::to_string(p) + ", q=" + std::to_string(q) + ", g=" + std::to_string(g) + ")";
  if (!is_prime(p)) throw ParameterError("p is not prime " + tag);
  if (!is_prime(q)) throw ParameterError("q is not prime " + tag);
  if ((p - 1) % q != 0) throw ParameterError("q does not divide p-1 " + tag);
  if (g <= 1 || g >= p) throw ParameterError("g must lie in 2..p-1 " + tag);
  if (powmod(g, q, p) != 1) throw ParameterError("g does not have order q " + tag);
  return {p, q, g};
}

namespace {

struct Preset {
  const char* name;
  std::uint64_t p, q, g;
};

constexpr std::array<Preset, 4> kPresets{{
    {"small", 23, 11, 2},
    {"toy16", 65267, 32633, 4},
    {"medium", 2147483579ULL, 1073741789ULL, 4},
    {"large", 2305843009213691579ULL, 1152921504606845789ULL, 4},
}};

std::uint64_t parse_u64(std::string_view s, std::string_view whole) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParameterError("malformed group '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

GroupParams setup_group(std::string_view preset) {
  for (const auto& p : kPresets) {
    if (preset == p.name) return setup_group(p.p, p.q, p.g);
  }
  const auto a = preset.find(':');
  const auto b = a == std::string_view::npos ? a : preset.find(':', a + 1);
  if (b == std::string_view::npos) throw ParameterError("unknown group preset '" + std::string(preset) + "'");
  return setup_group(parse_u64(preset.substr(0, a), preset), parse_u64(preset.substr(a + 1, b - a - 1), preset),
                     parse_u64(preset.substr(b + 1), preset));
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& p : kPresets) out.emplace_back(p.name);
  return out;
}

std::optional<std::string> group_warning(const GroupParams& gp) {
  if (gp.q < (1u << 16)) {
    return "q=" + std::to_string(gp.q) + " is below 2^16; fine for testing, useless for secrecy";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

AvNetRound1 step1_nonces(const GroupParams& gp, const std::vector<std::uint64_t>& secrets) {
  const auto k = secrets.size();
  if (k % 2 == 0) throw ParameterError("need an odd number of judges, got " + std::to_string(k));
  if (gp.q <= k) {
    throw ParameterError("q=" + std::to_string(gp.q) + " must exceed the judge count " + std::to_string(k));
  }
  AvNetRound1 r;
  r.n = k / 2;
  r.x = secrets;
  for (std::size_t i = 0; i < k; ++i) {
    if (secrets[i] == 0 || secrets[i] >= gp.q) {
      throw ParameterError("secret x_" + std::to_string(i) + " must lie in 1..q-1");
    }
    r.gx.push_back(gp.exp(secrets[i]));
    r.proofs.push_back({i, r.gx.back()});
  }
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t below = 1, above = 1;
    for (std::size_t j = 0; j < i; ++j) below = mulmod(below, r.gx[j], gp.p);
    for (std::size_t j = i + 1; j < k; ++j) above = mulmod(above, r.gx[j], gp.p);
    r.gy.push_back(mulmod(below, gp.inv(above), gp.p));
    r.nonce.push_back(powmod(r.gy.back(), r.x[i], gp.p));
  }
  std::uint64_t prod = 1;
  for (auto v : r.nonce) prod = mulmod(prod, v, gp.p);
  if (prod != 1) throw Error("nonces do not cancel; group parameters are inconsistent");
  return r;
}

AvNetRound1 step1_nonces(const GroupParams& gp, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(1, gp.q - 1);
  std::vector<std::uint64_t> secrets(2 * n + 1);
  for (auto& x : secrets) x = dist(rng);
  return step1_nonces(gp, secrets);
}

AvNetShuffle step2_shuffle(const GroupParams& gp, const AvNetRound1& r1,
                           const std::vector<std::vector<std::uint64_t>>& perms) {
  const auto k = r1.judges();
  const auto n = r1.n;
  if (perms.size() != k) throw ParameterError("need one permutation per judge");
  AvNetShuffle s;
  for (std::uint64_t m = n + 1; m <= 2 * n + 1; ++m) s.majority_values.push_back(m);
  for (std::size_t i = 0; i < k; ++i) {
    auto sorted = perms[i];
    std::sort(sorted.begin(), sorted.end());
    if (sorted != s.majority_values) {
      throw ParameterError("permutation of judge " + std::to_string(i) + " is not a bijection on M");
    }
  }
  s.perms = perms;
  std::vector<std::uint64_t> cur;
  for (auto m : s.majority_values) cur.push_back(gp.exp(m));
  s.rounds.push_back(cur);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::uint64_t> next(cur.size());
    for (std::size_t pos = 0; pos < cur.size(); ++pos) {
      next[perms[i][pos] - (n + 1)] = powmod(cur[pos], r1.x[i], gp.p);
    }
    cur = std::move(next);
    s.rounds.push_back(cur);
  }
  return s;
}

AvNetShuffle step2_shuffle(const GroupParams& gp, const AvNetRound1& r1, std::mt19937_64& rng) {
  std::vector<std::vector<std::uint64_t>> perms;
  for (std::size_t i = 0; i < r1.judges(); ++i) {
    std::vector<std::uint64_t> p;
    for (std::uint64_t m = r1.n + 1; m <= 2 * r1.n + 1; ++m) p.push_back(m);
    std::shuffle(p.begin(), p.end(), rng);
    perms.push_back(std::move(p));
  }
  return step2_shuffle(gp, r1, perms);
}

Step3 step3_votes_and_verdict(const GroupParams& gp, const AvNetRound1& r1, const AvNetShuffle& shuffle,
                              const std::vector<int>& votes) {
  const auto k = r1.judges();
  if (votes.size() != k) {
    throw ParameterError("expected " + std::to_string(k) + " votes, got " + std::to_string(votes.size()));
  }
  for (auto v : votes) {
    if (v != 0 && v != 1) throw ParameterError("votes must be bits");
  }
  Step3 out;
  out.votes.votes = votes;
  std::vector<std::uint64_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto base = votes[i] ? mulmod(r1.nonce[i], gp.g, gp.p) : r1.nonce[i];
    cur[i] = powmod(base, r1.x[i], gp.p);
  }
  out.votes.z.push_back(cur);
  for (std::size_t r = 2; r <= k; ++r) {
    std::vector<std::uint64_t> next(k);
    for (std::size_t i = 0; i < k; ++i) next[i] = powmod(cur[(i + k - 1) % k], r1.x[i], gp.p);
    cur = std::move(next);
    out.votes.z.push_back(cur);
  }
  std::uint64_t prod = 1;
  for (auto z : cur) prod = mulmod(prod, z, gp.p);
  out.votes.product = prod;
  const auto& fin = shuffle.final_set();
  out.verdict = std::find(fin.begin(), fin.end(), prod) != fin.end() ? 1 : 0;
  return out;
}

Transcript run(const GroupParams& gp, const std::vector<int>& votes, std::mt19937_64& rng) {
  if (votes.size() % 2 == 0) throw ParameterError("need an odd number of votes");
  Transcript t;
  t.group = gp;
  t.round1 = step1_nonces(gp, votes.size() / 2, rng);
  t.shuffle = step2_shuffle(gp, t.round1, rng);
  auto s3 = step3_votes_and_verdict(gp, t.round1, t.shuffle, votes);
  t.votes = std::move(s3.votes);
  t.verdict = s3.verdict;
  return t;
}

nlohmann::json transcript_to_json(const Transcript& t) {
  using nlohmann::json;
  json doc;
  doc["schema"] = "judgebench/1";
  doc["group"] = {{"p", t.group.p}, {"q", t.group.q}, {"g", t.group.g}};
  doc["round1"] = t.round1.gx;
  doc["round1_gy"] = t.round1.gy;
  doc["round1_nonces"] = t.round1.nonce;
  json proofs = json::array();
  for (const auto& p : t.round1.proofs) proofs.push_back({{"judge", p.judge}, {"statement", p.statement}, {"stub", true}});
  doc["proofs"] = std::move(proofs);
  doc["shuffle_rounds"] = t.shuffle.rounds;
  doc["vote_rounds"] = t.votes.z;
  doc["product"] = t.votes.product;
  doc["verdict"] = t.verdict;
  return doc;
}

}  // namespace judgebench::avnet
