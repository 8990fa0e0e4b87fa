#include <algorithm>

#include "judgebench/error.hpp"
#include "judgebench/mck.hpp"

namespace judgebench::mck {

struct Formula::Node {
  Op op;
  Atom atom;
  int agent = -1;
  std::vector<Formula> kids;
  std::string text;
  std::size_t depth = 0;
};

namespace {

const char* unary_keyword(Formula::Op op) {
  switch (op) {
    case Formula::Op::EX: return "EX";
    case Formula::Op::AX: return "AX";
    case Formula::Op::EF: return "EF";
    case Formula::Op::AF: return "AF";
    case Formula::Op::EG: return "EG";
    case Formula::Op::AG: return "AG";
    default: return nullptr;
  }
}

}  // namespace

Formula Formula::truth() {
  return Formula(std::make_shared<const Node>(Node{Op::True, {}, -1, {}, "true", 0}));
}

Formula Formula::falsity() {
  return Formula(std::make_shared<const Node>(Node{Op::False, {}, -1, {}, "false", 0}));
}

Formula Formula::atom(Atom a) {
  return Formula(std::make_shared<const Node>(Node{Op::Atom, a, -1, {}, a.str(), 0}));
}

Formula Formula::negate(Formula f) {
  std::string text = "!" + f.str();
  const auto d = f.depth() + 1;
  return Formula(std::make_shared<const Node>(Node{Op::Not, {}, -1, {std::move(f)}, std::move(text), d}));
}

#define JUDGEBENCH_BINARY(NAME, OPCODE, SYM)                                                 \
  Formula Formula::NAME(Formula a, Formula b) {                                              \
    std::string text = "(" + a.str() + " " SYM " " + b.str() + ")";                          \
    const auto d = std::max(a.depth(), b.depth()) + 1;                                       \
    return Formula(std::make_shared<const Node>(                                             \
        Node{Op::OPCODE, {}, -1, {std::move(a), std::move(b)}, std::move(text), d}));        \
  }

JUDGEBENCH_BINARY(conj, And, "&")
JUDGEBENCH_BINARY(disj, Or, "|")
JUDGEBENCH_BINARY(implies, Implies, "->")
#undef JUDGEBENCH_BINARY

Formula Formula::knows(int agent, Formula f) {
  if (agent < 0) throw ParameterError("agent index must be non-negative");
  std::string text = "K " + std::to_string(agent) + " " + f.str();
  const auto d = f.depth() + 1;
  return Formula(std::make_shared<const Node>(Node{Op::K, {}, agent, {std::move(f)}, std::move(text), d}));
}

Formula Formula::possible(int agent, Formula f) {
  if (agent < 0) throw ParameterError("agent index must be non-negative");
  std::string text = "P " + std::to_string(agent) + " " + f.str();
  const auto d = f.depth() + 1;
  return Formula(std::make_shared<const Node>(Node{Op::P, {}, agent, {std::move(f)}, std::move(text), d}));
}

Formula Formula::unary(Op op, Formula f) {
  const char* kw = unary_keyword(op);
  if (!kw) throw ParameterError("not a unary temporal operator");
  std::string text = std::string(kw) + " " + f.str();
  const auto d = f.depth() + 1;
  return Formula(std::make_shared<const Node>(Node{op, {}, -1, {std::move(f)}, std::move(text), d}));
}

Formula Formula::eu(Formula a, Formula b) {
  std::string text = "E (" + a.str() + " U " + b.str() + ")";
  const auto d = std::max(a.depth(), b.depth()) + 1;
  return Formula(std::make_shared<const Node>(Node{Op::EU, {}, -1, {std::move(a), std::move(b)}, std::move(text), d}));
}

Formula Formula::au(Formula a, Formula b) {
  std::string text = "A (" + a.str() + " U " + b.str() + ")";
  const auto d = std::max(a.depth(), b.depth()) + 1;
  return Formula(std::make_shared<const Node>(Node{Op::AU, {}, -1, {std::move(a), std::move(b)}, std::move(text), d}));
}

Formula Formula::conj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return truth();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Formula Formula::disj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return falsity();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
  return acc;
}

Formula::Op Formula::op() const noexcept { return node_->op; }

const Atom& Formula::atom_value() const {
  if (node_->op != Op::Atom) throw ParameterError("not an atom");
  return node_->atom;
}

int Formula::agent() const {
  if (node_->op != Op::K && node_->op != Op::P) throw ParameterError("not a knowledge operator");
  return node_->agent;
}

std::size_t Formula::arity() const noexcept { return node_->kids.size(); }

const Formula& Formula::child(std::size_t i) const {
  if (i >= node_->kids.size()) throw ParameterError("formula has no operand " + std::to_string(i));
  return node_->kids[i];
}

std::size_t Formula::depth() const noexcept { return node_->depth; }

std::string Formula::str() const { return node_->text; }

bool operator==(const Formula& a, const Formula& b) {
  return a.node_ == b.node_ || a.node_->text == b.node_->text;
}

// ---------------------------------------------------------------------------

namespace {

Formula contradiction() {
  const auto p = Formula::atom(Atom::verdict(kripke::kPending));
  return Formula::conj(p, Formula::negate(p));
}

}  // namespace

Formula normalize(const Formula& f) {
  using Op = Formula::Op;
  switch (f.op()) {
    case Op::True: return Formula::negate(contradiction());
    case Op::False: return contradiction();
    case Op::Atom: return f;
    case Op::Not: return Formula::negate(normalize(f.child()));
    case Op::And: return Formula::conj(normalize(f.child(0)), normalize(f.child(1)));
    case Op::Or: return Formula::disj(normalize(f.child(0)), normalize(f.child(1)));
    case Op::Implies: return Formula::implies(normalize(f.child(0)), normalize(f.child(1)));
    case Op::K: return Formula::knows(f.agent(), normalize(f.child()));
    case Op::P:
      return Formula::negate(Formula::knows(f.agent(), Formula::negate(normalize(f.child()))));
    case Op::EX: return Formula::unary(Op::EX, normalize(f.child()));
    case Op::AX:
      return Formula::negate(Formula::unary(Op::EX, Formula::negate(normalize(f.child()))));
    case Op::EF: return Formula::eu(normalize(Formula::truth()), normalize(f.child()));
    case Op::AF:
      return Formula::negate(Formula::unary(Op::EG, Formula::negate(normalize(f.child()))));
    case Op::EG: return Formula::unary(Op::EG, normalize(f.child()));
    case Op::AG:
      return Formula::negate(
          Formula::eu(normalize(Formula::truth()), Formula::negate(normalize(f.child()))));
    case Op::EU: return Formula::eu(normalize(f.child(0)), normalize(f.child(1)));
    case Op::AU: {
      const auto a = normalize(f.child(0));
      const auto b = normalize(f.child(1));
      const auto not_b = Formula::negate(b);
      return Formula::negate(Formula::disj(
          Formula::eu(not_b, Formula::conj(Formula::negate(a), not_b)),
          Formula::unary(Op::EG, not_b)));
    }
  }
  return f;
}

void validate(const KripkeModel& m, const Formula& f) {
  using Op = Formula::Op;
  if (f.op() == Op::Atom) {
    m.validate_atom(f.atom_value());
    return;
  }
  if (f.op() == Op::K || f.op() == Op::P) {
    if (static_cast<std::size_t>(f.agent()) >= m.num_agents()) {
      throw ValidationError("agent " + std::to_string(f.agent()) + " does not exist in a model with " +
                            std::to_string(m.num_agents()) + " agents");
    }
  }
  for (std::size_t i = 0; i < f.arity(); ++i) validate(m, f.child(i));
}

}  // namespace judgebench::mck
