#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "judgebench/kripke.hpp"

// Explicit-state checker for CTL with one knowledge modality per agent.
//
// Grammar (ASCII), precedence ! > & > | > ->, `->` right-associative:
//
//   F := v=1 | v=0 | v=<count> | v=unknown | d<i>=0 | d<i>=1 | true | false
//      | ! F | K <i> F | P <i> F | EX F | AX F | EF F | AF F | EG F | AG F
//      | F & F | F | F | F -> F | E (F U F) | A (F U F) | ( F )
namespace judgebench::mck {

using kripke::Atom;
using kripke::KripkeModel;
using kripke::StateId;

class Formula {
 public:
  enum class Op { True, False, Atom, Not, And, Or, Implies, K, P, EX, AX, EF, AF, EG, AG, EU, AU };

  static Formula truth();
  static Formula falsity();
  static Formula atom(Atom a);
  static Formula negate(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula knows(int agent, Formula f);
  static Formula possible(int agent, Formula f);
  static Formula unary(Op op, Formula f);  // EX AX EF AF EG AG
  static Formula eu(Formula a, Formula b);
  static Formula au(Formula a, Formula b);
  // Left-nested folds; empty lists give true / false.
  static Formula conj_all(const std::vector<Formula>& parts);
  static Formula disj_all(const std::vector<Formula>& parts);

  Op op() const noexcept;
  const Atom& atom_value() const;
  int agent() const;
  std::size_t arity() const noexcept;
  const Formula& child(std::size_t i = 0) const;

  std::size_t depth() const noexcept;
  // Parseable text; parse_formula(f.str()) == f.
  std::string str() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Throws ParseError with line/column.
Formula parse_formula(std::string_view text);

// Rewrites derived operators into {atom, !, &, |, ->, K, EX, EG, EU}:
//   true = !(p & !p), false = p & !p, P_i f = !K_i !f, AX f = !EX !f,
//   EF f = E(true U f), AF f = !EG !f, AG f = !EF !f,
//   A(f U g) = !(E(!g U (!f & !g)) | EG !g).
Formula normalize(const Formula& f);

// Throws ValidationError on atoms or agents the model does not have.
void validate(const KripkeModel& m, const Formula& f);

using StateSet = std::vector<std::uint8_t>;

struct CheckResult {
  StateSet satisfying;
  bool holds_on_init = false;
  // First initial state outside `satisfying`, if any.
  std::optional<StateId> failing_init;

  std::size_t count() const noexcept;
};

// Evaluates bottom-up with memoisation of identical subformulas. One checker
// per thread; the model is shared read-only.
class Checker {
 public:
  explicit Checker(const KripkeModel& model) : model_(model) {}

  CheckResult check(const Formula& f);
  const StateSet& eval(const Formula& f);

 private:
  StateSet compute(const Formula& f);
  StateSet ex(const StateSet& z) const;
  StateSet eg(const StateSet& phi) const;
  StateSet eu(const StateSet& phi, const StateSet& psi) const;
  StateSet knows(std::size_t agent, const StateSet& phi) const;

  const KripkeModel& model_;
  std::unordered_map<std::string, StateSet> memo_;
};

CheckResult check(const KripkeModel& m, const Formula& f);

struct Evidence {
  enum class Kind {
    None,            // nothing to show (formula holds)
    FailingInit,     // an initial state where the formula is false
    Counterexample,  // reachable state violating an AG body, with a path
    Lasso,           // path avoiding an AF target forever
  };
  Kind kind = Kind::None;
  std::string explanation;
  std::vector<StateId> path;  // from an initial state
  std::size_t loop_start = 0;  // Lasso: path[loop_start..] repeats
  std::optional<StateId> state;
  // When the violation is a knowledge fact K_i g: agent i's whole class at
  // `state`, every member satisfying g.
  std::optional<int> knowing_agent;
  std::optional<Formula> known;
  std::vector<StateId> knowledge_class;
};

Evidence explain(const KripkeModel& m, const Formula& f, const CheckResult& result);

}  // namespace judgebench::mck
