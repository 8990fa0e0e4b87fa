#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

// Rivest's 1-out-of-2 oblivious transfer with a trusted initialiser T.
//
//   1. T -> A: r0, r1          T -> B: d, r_d
//   2. B -> A: e = c xor d
//   3. A -> B: f0 = m0 xor r_e, f1 = m1 xor r_(1-e)
//
// B recovers m_c = f_c xor r_d. A never sees c; B never sees r_(1-d).
namespace judgebench::ot {

class BitString {
 public:
  BitString() = default;
  explicit BitString(std::vector<int> bits);
  static BitString zeros(std::size_t k);
  static BitString parse(std::string_view text);
  static BitString from_mask(std::size_t k, std::uint64_t mask);

  std::size_t size() const noexcept { return bits_.size(); }
  int operator[](std::size_t i) const { return bits_.at(i); }
  const std::vector<int>& bits() const noexcept { return bits_; }
  std::string str() const;

  friend BitString operator^(const BitString& a, const BitString& b);
  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  std::vector<int> bits_;
};

struct OtInitPackage {
  BitString r0;
  BitString r1;
  int d = 0;

  const BitString& r(int index) const { return index == 0 ? r0 : r1; }
  // What T hands to each side.
  std::pair<BitString, BitString> alice_share() const { return {r0, r1}; }
  std::pair<int, BitString> bob_share() const { return {d, r(d)}; }
  std::size_t k() const noexcept { return r0.size(); }
};

struct OtTranscript {
  int e = 0;
  BitString f0;
  BitString f1;
  BitString delivered;
};

// Explicit randomness; validates lengths and bit range.
OtInitPackage ot_init(BitString r0, BitString r1, int d);
// Seeded randomness. Same seed, same package.
OtInitPackage ot_init(std::size_t k, std::uint64_t seed);
OtInitPackage ot_init(std::size_t k, std::mt19937_64& rng);

OtTranscript ot_execute(const BitString& m0, const BitString& m1, int c, const OtInitPackage& pkg);

}  // namespace judgebench::ot
