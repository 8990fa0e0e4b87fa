#include "judgebench/core.hpp"

#include <algorithm>
#include <bit>

#include "judgebench/error.hpp"

namespace judgebench::core {

DecisionVector::DecisionVector(std::vector<int> bits) : bits_(std::move(bits)) {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] != 0 && bits_[i] != 1) {
      throw ParameterError("decision " + std::to_string(i) + " is not a bit");
    }
  }
}

DecisionVector DecisionVector::from_mask(std::size_t size, std::uint64_t mask) {
  if (size > 63) throw ParameterError("decision vector too long for a mask");
  std::vector<int> bits(size);
  for (std::size_t i = 0; i < size; ++i) bits[i] = static_cast<int>((mask >> i) & 1u);
  return DecisionVector(std::move(bits));
}

DecisionVector DecisionVector::parse(std::string_view text) {
  std::vector<int> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(c - '0');
    } else if (c != ',' && c != ' ') {
      throw ParameterError("bad decision character '" + std::string(1, c) + "'");
    }
  }
  return DecisionVector(std::move(bits));
}

std::size_t DecisionVector::ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::uint64_t DecisionVector::mask() const noexcept {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < bits_.size() && i < 64; ++i) {
    if (bits_[i]) m |= std::uint64_t{1} << i;
  }
  return m;
}

DecisionVector DecisionVector::with(std::size_t i, int bit) const {
  auto bits = bits_;
  bits.at(i) = bit;
  return DecisionVector(std::move(bits));
}

std::string DecisionVector::str() const {
  std::string s;
  s.reserve(bits_.size());
  for (int b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

Verdict verdict_from_bit(int bit) {
  if (bit == 0) return Verdict::Innocent;
  if (bit == 1) return Verdict::Guilty;
  throw ParameterError("verdict bit must be 0 or 1");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Innocent: return "innocent";
    case Verdict::Guilty: return "guilty";
    case Verdict::Pending: return "pending";
  }
  return "?";
}

std::vector<DecisionVector> all_decision_vectors(std::size_t size) {
  if (size > 20) throw ParameterError("refusing to enumerate more than 2^20 decision vectors");
  std::vector<DecisionVector> out;
  out.reserve(std::size_t{1} << size);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << size); ++m) {
    out.push_back(DecisionVector::from_mask(size, m));
  }
  return out;
}

int majority(const DecisionVector& dv) {
  if (dv.size() % 2 == 0) {
    throw ParameterError("majority needs an odd number of judges, got " + std::to_string(dv.size()));
  }
  return dv.ones() >= (dv.size() + 1) / 2 ? 1 : 0;
}

int threshold_oracle(const DecisionVector& dv, std::size_t k) {
  if (k > dv.size()) {
    throw ParameterError("threshold " + std::to_string(k) + " exceeds vector length " +
                         std::to_string(dv.size()));
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < dv.size(); ++i) count += dv[i] == 1 ? 1 : 0;
  return count >= k ? 1 : 0;
}

// ---------------------------------------------------------------------------
// ThresholdFormula

struct ThresholdFormula::Node {
  Kind kind;
  bool value = false;
  std::size_t pair = 0;
  std::vector<ThresholdFormula> children;
};

ThresholdFormula ThresholdFormula::constant(bool value) {
  return ThresholdFormula(std::make_shared<const Node>(Node{Kind::Const, value, 0, {}}));
}

ThresholdFormula ThresholdFormula::pair_and(std::size_t pair) {
  if (pair == 0) throw ParameterError("pair indices start at 1");
  return ThresholdFormula(std::make_shared<const Node>(Node{Kind::PairAnd, false, pair, {}}));
}

ThresholdFormula ThresholdFormula::pair_or(std::size_t pair) {
  if (pair == 0) throw ParameterError("pair indices start at 1");
  return ThresholdFormula(std::make_shared<const Node>(Node{Kind::PairOr, false, pair, {}}));
}

ThresholdFormula ThresholdFormula::conj(ThresholdFormula lhs, ThresholdFormula rhs) {
  return ThresholdFormula(
      std::make_shared<const Node>(Node{Kind::And, false, 0, {std::move(lhs), std::move(rhs)}}));
}

ThresholdFormula ThresholdFormula::disj(ThresholdFormula lhs, ThresholdFormula rhs) {
  return ThresholdFormula(
      std::make_shared<const Node>(Node{Kind::Or, false, 0, {std::move(lhs), std::move(rhs)}}));
}

ThresholdFormula::Kind ThresholdFormula::kind() const noexcept { return node_->kind; }
bool ThresholdFormula::value() const noexcept { return node_->value; }
std::size_t ThresholdFormula::pair() const noexcept { return node_->pair; }

const ThresholdFormula& ThresholdFormula::lhs() const {
  if (node_->children.size() != 2) throw ParameterError("leaf has no operands");
  return node_->children[0];
}

const ThresholdFormula& ThresholdFormula::rhs() const {
  if (node_->children.size() != 2) throw ParameterError("leaf has no operands");
  return node_->children[1];
}

std::size_t ThresholdFormula::max_pair() const noexcept {
  std::size_t m = node_->pair;
  for (const auto& c : node_->children) m = std::max(m, c.max_pair());
  return m;
}

std::size_t ThresholdFormula::size() const noexcept {
  std::size_t s = 1;
  for (const auto& c : node_->children) s += c.size();
  return s;
}

std::string ThresholdFormula::str() const {
  switch (node_->kind) {
    case Kind::Const: return node_->value ? "true" : "false";
    case Kind::PairAnd: return "and" + std::to_string(node_->pair);
    case Kind::PairOr: return "or" + std::to_string(node_->pair);
    case Kind::And: return "(" + lhs().str() + " & " + rhs().str() + ")";
    case Kind::Or: return "(" + lhs().str() + " | " + rhs().str() + ")";
  }
  return "?";
}

namespace {

bool is_const(const ThresholdFormula& f, bool v) {
  return f.kind() == ThresholdFormula::Kind::Const && f.value() == v;
}

ThresholdFormula simplify_and(ThresholdFormula a, ThresholdFormula b) {
  if (is_const(a, false) || is_const(b, false)) return ThresholdFormula::constant(false);
  if (is_const(a, true)) return b;
  if (is_const(b, true)) return a;
  return ThresholdFormula::conj(std::move(a), std::move(b));
}

ThresholdFormula simplify_or(ThresholdFormula a, ThresholdFormula b) {
  if (is_const(a, true) || is_const(b, true)) return ThresholdFormula::constant(true);
  if (is_const(a, false)) return b;
  if (is_const(b, false)) return a;
  return ThresholdFormula::disj(std::move(a), std::move(b));
}

}  // namespace

ThresholdFormula build_threshold_formula(std::size_t n_pairs, std::size_t k) {
  if (n_pairs == 0) throw ParameterError("need at least one pair");
  if (k > 2 * n_pairs) {
    throw ParameterError("threshold " + std::to_string(k) + " out of range for " +
                         std::to_string(n_pairs) + " pairs");
  }
  // at_least[t]: pairs 1..i contribute at least t ones. A pair contributes
  // PairAnd + PairOr ones, so "pair gives >= 1" is PairOr and ">= 2" is PairAnd.
  std::vector<ThresholdFormula> at_least;
  at_least.reserve(k + 1);
  at_least.push_back(ThresholdFormula::constant(true));
  for (std::size_t t = 1; t <= k; ++t) at_least.push_back(ThresholdFormula::constant(false));

  for (std::size_t i = 1; i <= n_pairs; ++i) {
    std::vector<ThresholdFormula> next = at_least;
    for (std::size_t t = 1; t <= k; ++t) {
      auto f = simplify_or(at_least[t], simplify_and(ThresholdFormula::pair_or(i), at_least[t - 1]));
      // For t == 1 the PairAnd disjunct is implied by PairOr.
      if (t >= 2) f = simplify_or(f, simplify_and(ThresholdFormula::pair_and(i), at_least[t - 2]));
      next[t] = std::move(f);
    }
    at_least = std::move(next);
  }
  return at_least[k];
}

int eval_threshold_formula(const ThresholdFormula& f, const DecisionVector& dv) {
  using K = ThresholdFormula::Kind;
  switch (f.kind()) {
    case K::Const: return f.value() ? 1 : 0;
    case K::PairAnd:
    case K::PairOr: {
      const std::size_t hi = 2 * f.pair() - 1;
      if (hi >= dv.size()) {
        throw ParameterError("pair " + std::to_string(f.pair()) + " outside a vector of length " +
                             std::to_string(dv.size()));
      }
      const int a = dv[hi - 1];
      const int b = dv[hi];
      return f.kind() == K::PairAnd ? (a & b) : (a | b);
    }
    case K::And: return eval_threshold_formula(f.lhs(), dv) & eval_threshold_formula(f.rhs(), dv);
    case K::Or: return eval_threshold_formula(f.lhs(), dv) | eval_threshold_formula(f.rhs(), dv);
  }
  return 0;
}

ThresholdFormula dual(const ThresholdFormula& f) {
  using K = ThresholdFormula::Kind;
  switch (f.kind()) {
    case K::Const: return ThresholdFormula::constant(!f.value());
    case K::PairAnd: return ThresholdFormula::pair_or(f.pair());
    case K::PairOr: return ThresholdFormula::pair_and(f.pair());
    case K::And: return ThresholdFormula::disj(dual(f.lhs()), dual(f.rhs()));
    case K::Or: return ThresholdFormula::conj(dual(f.lhs()), dual(f.rhs()));
  }
  return f;
}

ThresholdFormula printed_two_of_four() {
  using F = ThresholdFormula;
  // (d1&d2) | (d3&d4) | ((d1|d2) & (d3&d4))
  return F::disj(F::disj(F::pair_and(1), F::pair_and(2)), F::conj(F::pair_or(1), F::pair_and(2)));
}

ThresholdFormula printed_three_of_four() {
  using F = ThresholdFormula;
  // (d1|d2) & (d3|d4) & ((d1&d2) | (d3|d4))
  return F::conj(F::conj(F::pair_or(1), F::pair_or(2)), F::disj(F::pair_and(1), F::pair_or(2)));
}

bool compatible(std::size_t i, std::size_t j, int d_i, int /*d_j*/, int v, std::size_t total) {
  if (i == j) throw ParameterError("compatible needs two distinct judges");
  if (total % 2 == 0 || total < 3) throw ParameterError("judge count must be odd and at least 3");
  if (i >= total || j >= total) throw ParameterError("judge index out of range");
  if ((d_i != 0 && d_i != 1) || (v != 0 && v != 1)) throw ParameterError("bits expected");

  bool seen[2] = {false, false};
  const std::uint64_t free_count = std::uint64_t{1} << (total - 2);
  for (std::uint64_t rest = 0; rest < free_count; ++rest) {
    std::vector<int> bits(total);
    std::size_t r = 0;
    for (std::size_t k = 0; k < total; ++k) {
      if (k == i || k == j) continue;
      bits[k] = static_cast<int>((rest >> r++) & 1u);
    }
    bits[i] = d_i;
    for (int dj = 0; dj <= 1; ++dj) {
      bits[j] = dj;
      if (majority(DecisionVector(bits)) == v) seen[dj] = true;
    }
    if (seen[0] && seen[1]) return true;
  }
  return false;
}

}  // namespace judgebench::core
