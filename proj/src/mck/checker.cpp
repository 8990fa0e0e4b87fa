#include <algorithm>

#include "judgebench/error.hpp"
#include "judgebench/mck.hpp"

namespace judgebench::mck {

std::size_t CheckResult::count() const noexcept {
  return static_cast<std::size_t>(std::count(satisfying.begin(), satisfying.end(), std::uint8_t{1}));
}

CheckResult Checker::check(const Formula& f) {
  validate(model_, f);
  CheckResult r;
  r.satisfying = eval(f);
  r.holds_on_init = true;
  for (auto s : model_.init()) {
    if (!r.satisfying[s]) {
      r.holds_on_init = false;
      r.failing_init = s;
      break;
    }
  }
  return r;
}

const StateSet& Checker::eval(const Formula& f) {
  const auto key = f.str();
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  auto set = compute(f);
  return memo_.emplace(key, std::move(set)).first->second;
}

StateSet Checker::compute(const Formula& f) {
  using Op = Formula::Op;
  const std::size_t n = model_.size();
  switch (f.op()) {
    case Op::Atom: {
      StateSet out(n);
      const auto& a = f.atom_value();
      for (StateId s = 0; s < n; ++s) out[s] = model_.holds(a, s);
      return out;
    }
    case Op::Not: {
      StateSet out = eval(f.child());
      for (auto& b : out) b ^= 1;
      return out;
    }
    case Op::And:
    case Op::Or:
    case Op::Implies: {
      StateSet out = eval(f.child(0));
      const auto& rhs = eval(f.child(1));
      for (std::size_t s = 0; s < n; ++s) {
        if (f.op() == Op::And) out[s] = out[s] & rhs[s];
        else if (f.op() == Op::Or) out[s] = out[s] | rhs[s];
        else out[s] = !out[s] || rhs[s];
      }
      return out;
    }
    case Op::K: return knows(static_cast<std::size_t>(f.agent()), eval(f.child()));
    case Op::EX: return ex(eval(f.child()));
    case Op::EG: return eg(eval(f.child()));
    case Op::EU: {
      const StateSet phi = eval(f.child(0));
      return eu(phi, eval(f.child(1)));
    }
    default:
      // Derived operators go through their core rewriting one level down.
      break;
  }
  Formula core = f;
  switch (f.op()) {
    case Op::True: core = Formula::negate(Formula::falsity()); break;
    case Op::False: {
      StateSet out(n, 0);
      return out;
    }
    case Op::P: core = Formula::negate(Formula::knows(f.agent(), Formula::negate(f.child()))); break;
    case Op::AX: core = Formula::negate(Formula::unary(Op::EX, Formula::negate(f.child()))); break;
    case Op::EF: core = Formula::eu(Formula::truth(), f.child()); break;
    case Op::AF: core = Formula::negate(Formula::unary(Op::EG, Formula::negate(f.child()))); break;
    case Op::AG: core = Formula::negate(Formula::eu(Formula::truth(), Formula::negate(f.child()))); break;
    case Op::AU: {
      const auto not_b = Formula::negate(f.child(1));
      core = Formula::negate(Formula::disj(
          Formula::eu(not_b, Formula::conj(Formula::negate(f.child(0)), not_b)), Formula::unary(Op::EG, not_b)));
      break;
    }
    default: throw ParameterError("unhandled operator in " + f.str());
  }
  return eval(core);
}

StateSet Checker::ex(const StateSet& z) const {
  const std::size_t n = model_.size();
  StateSet out(n, 0);
  for (StateId s = 0; s < n; ++s) {
    for (auto t : model_.successors(s)) {
      if (z[t]) {
        out[s] = 1;
        break;
      }
    }
  }
  return out;
}

// Greatest fixpoint: drop phi-states that lose their last successor inside
// the set until nothing changes.
StateSet Checker::eg(const StateSet& phi) const {
  const std::size_t n = model_.size();
  StateSet in = phi;
  std::vector<std::uint32_t> live(n, 0);
  std::vector<StateId> work;
  for (StateId s = 0; s < n; ++s) {
    if (!in[s]) continue;
    for (auto t : model_.successors(s)) live[s] += in[t];
    if (live[s] == 0) work.push_back(s);
  }
  while (!work.empty()) {
    const auto s = work.back();
    work.pop_back();
    if (!in[s]) continue;
    in[s] = 0;
    for (auto p : model_.predecessors(s)) {
      if (in[p] && --live[p] == 0) work.push_back(p);
    }
  }
  return in;
}

StateSet Checker::eu(const StateSet& phi, const StateSet& psi) const {
  const std::size_t n = model_.size();
  StateSet out = psi;
  std::vector<StateId> work;
  for (StateId s = 0; s < n; ++s) {
    if (out[s]) work.push_back(s);
  }
  while (!work.empty()) {
    const auto s = work.back();
    work.pop_back();
    for (auto p : model_.predecessors(s)) {
      if (!out[p] && phi[p]) {
        out[p] = 1;
        work.push_back(p);
      }
    }
  }
  return out;
}

StateSet Checker::knows(std::size_t agent, const StateSet& phi) const {
  const std::size_t n = model_.size();
  StateSet out(n, 0);
  const auto classes = model_.num_classes(agent);
  for (std::uint32_t c = 0; c < classes; ++c) {
    const auto members = model_.class_members(agent, c);
    const bool all = std::all_of(members.begin(), members.end(), [&](StateId s) { return phi[s] != 0; });
    if (all) {
      for (auto s : members) out[s] = 1;
    }
  }
  return out;
}

CheckResult check(const KripkeModel& m, const Formula& f) {
  Checker c(m);
  return c.check(f);
}

}  // namespace judgebench::mck
