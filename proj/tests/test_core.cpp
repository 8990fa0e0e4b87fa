#include <doctest.h>

#include "judgebench/core.hpp"
#include "judgebench/error.hpp"

using namespace judgebench;
using namespace judgebench::core;

namespace {

int count_ones(const std::vector<int>& bits) {
  int c = 0;
  for (int b : bits) c += b;
  return c;
}

// Independent brute force: enumerate every full vector, keep those matching
// (i, d_i, v) and see which values of d_j occur.
bool compat_oracle(std::size_t i, std::size_t j, int di, int v, std::size_t total) {
  bool seen[2] = {false, false};
  for (std::uint64_t m = 0; m < (1ULL << total); ++m) {
    std::vector<int> bits(total);
    for (std::size_t k = 0; k < total; ++k) bits[k] = (m >> k) & 1;
    if (bits[i] != di) continue;
    const int maj = count_ones(bits) * 2 > static_cast<int>(total) ? 1 : 0;
    if (maj == v) seen[bits[j]] = true;
  }
  return seen[0] && seen[1];
}

}  // namespace

TEST_CASE("decision vectors validate bits and round-trip") {
  CHECK_THROWS_AS(DecisionVector({0, 2, 1}), ParameterError);
  const auto dv = DecisionVector::parse("10110");
  CHECK(dv.size() == 5);
  CHECK(dv.ones() == 3);
  CHECK(dv.str() == "10110");
  CHECK(DecisionVector::from_mask(5, dv.mask()) == dv);
  CHECK(dv.with(1, 1).str() == "11110");
  CHECK(all_decision_vectors(3).size() == 8);
  CHECK(all_decision_vectors(3)[5].str() == "101");
}

TEST_CASE("majority examples") {
  CHECK(majority(DecisionVector({1, 1, 0})) == 1);
  CHECK(majority(DecisionVector({0, 0, 0, 0, 0})) == 0);
  CHECK(majority(DecisionVector({1, 0, 1, 0, 1})) == 1);
  CHECK_THROWS_AS(majority(DecisionVector({1, 0})), ParameterError);
}

TEST_CASE("majority agrees with a counting loop on every odd vector up to 9") {
  for (std::size_t len = 1; len <= 9; len += 2) {
    for (const auto& dv : all_decision_vectors(len)) {
      const int expect = count_ones(dv.bits()) >= static_cast<int>((len + 1) / 2) ? 1 : 0;
      REQUIRE(majority(dv) == expect);
    }
  }
}

TEST_CASE("threshold oracle examples") {
  CHECK(threshold_oracle(DecisionVector({1, 0, 1, 0}), 2) == 1);
  CHECK(threshold_oracle(DecisionVector({0, 0, 0, 0}), 0) == 1);
  CHECK(threshold_oracle(DecisionVector({1, 1, 0, 1}), 3) == 1);
  CHECK_THROWS_AS(threshold_oracle(DecisionVector({1, 1}), 3), ParameterError);
}

TEST_CASE("threshold formula examples") {
  const auto f12 = build_threshold_formula(1, 2);
  for (const auto& dv : all_decision_vectors(2)) {
    CHECK(eval_threshold_formula(f12, dv) == eval_threshold_formula(ThresholdFormula::pair_and(1), dv));
  }
  CHECK(eval_threshold_formula(build_threshold_formula(2, 2), DecisionVector({1, 0, 1, 0})) == 1);
  CHECK(eval_threshold_formula(build_threshold_formula(2, 3), DecisionVector({1, 0, 1, 0})) == 0);
  CHECK_THROWS_AS(build_threshold_formula(2, 5), ParameterError);
  CHECK_THROWS_AS(build_threshold_formula(0, 0), ParameterError);
}

TEST_CASE("threshold formulas match the oracle exhaustively for up to four pairs") {
  for (std::size_t pairs = 1; pairs <= 4; ++pairs) {
    for (std::size_t k = 0; k <= 2 * pairs; ++k) {
      const auto f = build_threshold_formula(pairs, k);
      CHECK(f.max_pair() <= pairs);
      for (const auto& dv : all_decision_vectors(2 * pairs)) {
        REQUIRE(eval_threshold_formula(f, dv) == (count_ones(dv.bits()) >= static_cast<int>(k) ? 1 : 0));
      }
    }
  }
}

TEST_CASE("threshold formulas are monotone") {
  for (std::size_t pairs = 1; pairs <= 3; ++pairs) {
    for (std::size_t k = 0; k <= 2 * pairs; ++k) {
      const auto f = build_threshold_formula(pairs, k);
      for (const auto& dv : all_decision_vectors(2 * pairs)) {
        if (!eval_threshold_formula(f, dv)) continue;
        for (std::size_t i = 0; i < dv.size(); ++i) {
          if (dv[i] == 0) REQUIRE(eval_threshold_formula(f, dv.with(i, 1)) == 1);
        }
      }
    }
  }
}

TEST_CASE("dual of n-of-2n is (n+1)-of-2n") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto lhs = build_threshold_formula(n, n + 1);
    const auto rhs = dual(build_threshold_formula(n, n));
    for (const auto& dv : all_decision_vectors(2 * n)) {
      REQUIRE(eval_threshold_formula(lhs, dv) == eval_threshold_formula(rhs, dv));
    }
  }
}

TEST_CASE("evaluation examples and range errors") {
  CHECK(eval_threshold_formula(ThresholdFormula::pair_and(1), DecisionVector({1, 1})) == 1);
  CHECK(eval_threshold_formula(ThresholdFormula::pair_or(1), DecisionVector({0, 0})) == 0);
  const auto f = ThresholdFormula::disj(ThresholdFormula::pair_and(1), ThresholdFormula::pair_or(2));
  CHECK(eval_threshold_formula(f, DecisionVector({0, 1, 1, 0})) == 1);
  CHECK_THROWS_AS(eval_threshold_formula(f, DecisionVector({0, 1})), ParameterError);
  CHECK(f.str() == "(and1 | or2)");
}

TEST_CASE("four-judge fixtures disagree with the truth table on 1010") {
  const DecisionVector x({1, 0, 1, 0});
  CHECK(threshold_oracle(x, 2) == 1);
  CHECK(eval_threshold_formula(printed_two_of_four(), x) == 0);
  CHECK(threshold_oracle(x, 3) == 0);
  CHECK(eval_threshold_formula(printed_three_of_four(), x) == 1);
}

TEST_CASE("compatibility examples") {
  CHECK_FALSE(compatible(0, 1, 1, 0, 0, 3));
  CHECK(compatible(0, 1, 1, 0, 1, 3));
  CHECK(compatible(0, 1, 0, 0, 1, 5));
  CHECK_THROWS_AS(compatible(1, 1, 0, 0, 0, 3), ParameterError);
  CHECK_THROWS_AS(compatible(0, 1, 0, 0, 0, 4), ParameterError);
}

TEST_CASE("compatibility matches an independent brute force and ignores d_j") {
  for (std::size_t total : {3u, 5u, 7u}) {
    for (std::size_t i = 0; i < total; ++i) {
      for (std::size_t j = 0; j < total; ++j) {
        if (i == j) continue;
        for (int di = 0; di <= 1; ++di) {
          for (int v = 0; v <= 1; ++v) {
            const bool expect = compat_oracle(i, j, di, v, total);
            REQUIRE(compatible(i, j, di, 0, v, total) == expect);
            REQUIRE(compatible(i, j, di, 1, v, total) == expect);
          }
        }
      }
    }
  }
}
