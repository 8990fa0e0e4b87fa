#include "judgebench/ot.hpp"

#include "judgebench/error.hpp"

namespace judgebench::ot {

BitString::BitString(std::vector<int> bits) : bits_(std::move(bits)) {
  for (int b : bits_) {
    if (b != 0 && b != 1) throw ParameterError("bit strings hold only 0 and 1");
  }
}

BitString BitString::zeros(std::size_t k) { return BitString(std::vector<int>(k, 0)); }

BitString BitString::parse(std::string_view text) {
  std::vector<int> bits;
  for (char c : text) {
    if (c != '0' && c != '1') throw ParameterError("bad bit character in '" + std::string(text) + "'");
    bits.push_back(c - '0');
  }
  return BitString(std::move(bits));
}

BitString BitString::from_mask(std::size_t k, std::uint64_t mask) {
  std::vector<int> bits(k);
  for (std::size_t i = 0; i < k; ++i) bits[i] = static_cast<int>((mask >> i) & 1u);
  return BitString(std::move(bits));
}

std::string BitString::str() const {
  std::string s;
  for (int b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

BitString operator^(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw ParameterError("xor of bit strings with different lengths");
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return BitString(std::move(out));
}

OtInitPackage ot_init(BitString r0, BitString r1, int d) {
  if (r0.size() == 0) throw ParameterError("oblivious transfer needs k >= 1");
  if (r0.size() != r1.size()) throw ParameterError("r0 and r1 differ in length");
  if (d != 0 && d != 1) throw ParameterError("d must be a bit");
  return OtInitPackage{std::move(r0), std::move(r1), d};
}

OtInitPackage ot_init(std::size_t k, std::mt19937_64& rng) {
  if (k == 0) throw ParameterError("oblivious transfer needs k >= 1");
  std::uniform_int_distribution<int> bit(0, 1);
  std::vector<int> a(k), b(k);
  for (auto& x : a) x = bit(rng);
  for (auto& x : b) x = bit(rng);
  const int d = bit(rng);
  return OtInitPackage{BitString(std::move(a)), BitString(std::move(b)), d};
}

OtInitPackage ot_init(std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return ot_init(k, rng);
}

OtTranscript ot_execute(const BitString& m0, const BitString& m1, int c, const OtInitPackage& pkg) {
  if (c != 0 && c != 1) throw ParameterError("choice must be a bit");
  if (m0.size() != pkg.k() || m1.size() != pkg.k()) {
    throw ParameterError("message length does not match the initialiser's k");
  }
  OtTranscript t;
  t.e = c ^ pkg.d;
  t.f0 = m0 ^ pkg.r(t.e);
  t.f1 = m1 ^ pkg.r(1 - t.e);
  t.delivered = (c == 0 ? t.f0 : t.f1) ^ pkg.r(pkg.d);
  return t;
}

}  // namespace judgebench::ot
