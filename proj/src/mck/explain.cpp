#include <deque>
#include <sstream>

#include "judgebench/error.hpp"
#include "judgebench/mck.hpp"

namespace judgebench::mck {

namespace {

using Op = Formula::Op;

std::string describe(const KripkeModel& m, StateId s) {
  std::ostringstream out;
  out << "state " << s << " (round " << m.state(s).round << ":";
  for (const auto& l : m.labels(s)) out << ' ' << l;
  out << ')';
  return out.str();
}

// `body` is false at `s`; find the knowledge fact responsible, if any.
void attribute(Checker& ck, const KripkeModel& m, const Formula& body, StateId s, Evidence& ev) {
  switch (body.op()) {
    case Op::Implies:
      attribute(ck, m, body.child(1), s, ev);
      return;
    case Op::And:
      for (std::size_t i = 0; i < 2; ++i) {
        if (!ck.eval(body.child(i))[s]) {
          attribute(ck, m, body.child(i), s, ev);
          return;
        }
      }
      return;
    case Op::Or:
      // Both disjuncts fail; report the first that carries a knowledge fact.
      attribute(ck, m, body.child(0), s, ev);
      if (!ev.knowing_agent) attribute(ck, m, body.child(1), s, ev);
      return;
    case Op::Not: {
      const auto& inner = body.child();
      if (inner.op() == Op::K) {
        const auto agent = static_cast<std::size_t>(inner.agent());
        const auto cls = m.class_members(agent, m.obs_class(agent, s));
        ev.knowing_agent = inner.agent();
        ev.known = inner.child();
        ev.knowledge_class.assign(cls.begin(), cls.end());
        ev.explanation += "; J" + std::to_string(agent) + " knows " + inner.child().str() + " across all " +
                          std::to_string(cls.size()) + " states it cannot tell apart";
      }
      return;
    }
    default: return;
  }
}

Evidence at(Checker& ck, const KripkeModel& m, const Formula& f, StateId s0) {
  Evidence ev;
  ev.state = s0;
  switch (f.op()) {
    case Op::And: {
      for (std::size_t i = 0; i < 2; ++i) {
        if (!ck.eval(f.child(i))[s0]) return at(ck, m, f.child(i), s0);
      }
      break;
    }
    case Op::AG: {
      const auto& good = ck.eval(f.child());
      std::vector<StateId> parent(m.size(), UINT32_MAX);
      std::vector<char> seen(m.size(), 0);
      std::deque<StateId> queue{s0};
      seen[s0] = 1;
      StateId bad = s0;
      bool found = !good[s0];
      while (!found && !queue.empty()) {
        const auto s = queue.front();
        queue.pop_front();
        for (auto t : m.successors(s)) {
          if (seen[t]) continue;
          seen[t] = 1;
          parent[t] = s;
          if (!good[t]) {
            bad = t;
            found = true;
            break;
          }
          queue.push_back(t);
        }
      }
      if (!found) break;
      for (StateId cur = bad;; cur = parent[cur]) {
        ev.path.insert(ev.path.begin(), cur);
        if (cur == s0) break;
      }
      ev.kind = Evidence::Kind::Counterexample;
      ev.state = bad;
      ev.explanation = f.child().str() + " fails at " + describe(m, bad) + ", reached in " +
                       std::to_string(ev.path.size() - 1) + " steps from initial state " + std::to_string(s0);
      attribute(ck, m, f.child(), bad, ev);
      return ev;
    }
    case Op::AF: {
      const auto avoid = Formula::negate(f.child());
      const auto& stay = ck.eval(Formula::unary(Op::EG, avoid));
      if (!stay[s0]) break;
      std::vector<std::size_t> index(m.size(), SIZE_MAX);
      StateId cur = s0;
      while (index[cur] == SIZE_MAX) {
        index[cur] = ev.path.size();
        ev.path.push_back(cur);
        StateId next = cur;
        for (auto t : m.successors(cur)) {
          if (stay[t]) {
            next = t;
            break;
          }
        }
        cur = next;
      }
      ev.kind = Evidence::Kind::Lasso;
      ev.loop_start = index[cur];
      ev.state = cur;
      ev.explanation = "a path from initial state " + std::to_string(s0) + " loops at " + describe(m, cur) +
                       " without ever satisfying " + f.child().str();
      return ev;
    }
    default: break;
  }
  ev.kind = Evidence::Kind::FailingInit;
  ev.path = {s0};
  ev.explanation = f.str() + " is false at initial " + describe(m, s0);
  if (f.op() == Op::Not) attribute(ck, m, f, s0, ev);
  return ev;
}

}  // namespace

Evidence explain(const KripkeModel& m, const Formula& f, const CheckResult& result) {
  if (result.holds_on_init || !result.failing_init) {
    Evidence ev;
    ev.explanation = "holds on all " + std::to_string(m.init().size()) + " initial states; no counterexample exists";
    return ev;
  }
  Checker ck(m);
  return at(ck, m, f, *result.failing_init);
}

}  // namespace judgebench::mck
