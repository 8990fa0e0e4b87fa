#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace judgebench::core {

// Decision bits: 1 = guilty, 0 = innocent.
class DecisionVector {
 public:
  DecisionVector() = default;
  explicit DecisionVector(std::vector<int> bits);

  // Bit i of `mask` becomes entry i.
  static DecisionVector from_mask(std::size_t size, std::uint64_t mask);
  // Parses "10110".
  static DecisionVector parse(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  int operator[](std::size_t i) const { return bits_.at(i); }
  int d(std::size_t i) const { return bits_.at(i); }
  const std::vector<int>& bits() const noexcept { return bits_; }

  std::size_t ones() const noexcept;
  std::uint64_t mask() const noexcept;
  DecisionVector with(std::size_t i, int bit) const;
  std::string str() const;

  friend bool operator==(const DecisionVector&, const DecisionVector&) = default;
  friend auto operator<=>(const DecisionVector&, const DecisionVector&) = default;

 private:
  std::vector<int> bits_;
};

// A full vector of all judges' decisions.
using DecisionProfile = DecisionVector;

enum class Verdict { Innocent, Guilty, Pending };

Verdict verdict_from_bit(int bit);
std::string_view to_string(Verdict v);

// All 2^size vectors, ordered by mask.
std::vector<DecisionVector> all_decision_vectors(std::size_t size);

// 1 iff at least (len+1)/2 entries are 1. Throws ParameterError on even length.
int majority(const DecisionVector& dv);

// 1 iff at least k entries of dv are 1; k in [0, dv.size()].
int threshold_oracle(const DecisionVector& dv, std::size_t k);

// Monotone formula over pair aggregates. Pair i (1-based) covers entries
// 2i-2 and 2i-1 of the evaluated vector: PairAnd(i) is their conjunction,
// PairOr(i) their disjunction. There is no negation node.
class ThresholdFormula {
 public:
  enum class Kind { Const, PairAnd, PairOr, And, Or };

  static ThresholdFormula constant(bool value);
  static ThresholdFormula pair_and(std::size_t pair);
  static ThresholdFormula pair_or(std::size_t pair);
  static ThresholdFormula conj(ThresholdFormula lhs, ThresholdFormula rhs);
  static ThresholdFormula disj(ThresholdFormula lhs, ThresholdFormula rhs);

  Kind kind() const noexcept;
  bool value() const noexcept;
  std::size_t pair() const noexcept;
  const ThresholdFormula& lhs() const;
  const ThresholdFormula& rhs() const;

  std::size_t max_pair() const noexcept;
  std::size_t size() const noexcept;
  std::string str() const;

 private:
  struct Node;
  explicit ThresholdFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Formula true exactly on the 2*n_pairs-vectors with at least k ones.
ThresholdFormula build_threshold_formula(std::size_t n_pairs, std::size_t k);

// Throws ParameterError if a pair index exceeds dv.size()/2.
int eval_threshold_formula(const ThresholdFormula& f, const DecisionVector& dv);

// Swaps And/Or connectives and PairAnd/PairOr atoms.
ThresholdFormula dual(const ThresholdFormula& f);

// The two four-judge formulas as they appear in the original write-up. Both
// disagree with the threshold truth table on (1,0,1,0); kept as fixtures.
ThresholdFormula printed_two_of_four();
ThresholdFormula printed_three_of_four();

// Both values of d_j are consistent with d_i at position i and majority v,
// over `total` judges. Brute force over the other total-2 positions; the
// d_j argument does not influence the result.
bool compatible(std::size_t i, std::size_t j, int d_i, int d_j, int v, std::size_t total);

}  // namespace judgebench::core
