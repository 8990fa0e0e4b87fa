#include <algorithm>
#include <limits>
#include <thread>

#include "judgebench/error.hpp"
#include "judgebench/protocols.hpp"

namespace judgebench::protocols {

namespace {

std::vector<DecisionVector> decision_space(const EnumerationRequest& req) {
  const std::size_t judges = 2 * req.n + 1;
  if (req.decisions) {
    if (req.decisions->size() != judges) {
      throw ParameterError("fixed decisions have length " + std::to_string(req.decisions->size()) +
                           ", expected " + std::to_string(judges));
    }
    return {*req.decisions};
  }
  return core::all_decision_vectors(judges);
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

// Visits the runs for decision vectors [first, last) of `decisions`. With
// sampling, one generator seeded from (seed, decision index) feeds each vector
// so the stream does not depend on how vectors are split across threads.
void visit_range(const EnumerationRequest& req, const RandomSpace& space,
                 const std::vector<DecisionVector>& decisions, std::size_t first, std::size_t last,
                 const std::function<void(const RunRecord&)>& visit) {
  for (std::size_t di = first; di < last; ++di) {
    const auto& dv = decisions[di];
    if (req.sampled) {
      std::seed_seq seq{static_cast<std::uint32_t>(req.sampled->seed),
                        static_cast<std::uint32_t>(req.sampled->seed >> 32),
                        static_cast<std::uint32_t>(di)};
      std::mt19937_64 rng(seq);
      for (std::size_t s = 0; s < req.sampled->count; ++s) {
        visit(run_with_digits(req.protocol, dv, space.sample(rng), req.options));
      }
    } else {
      const std::uint64_t total = space.size();
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        visit(run_with_digits(req.protocol, dv, space.digits(idx), req.options));
      }
    }
  }
}

}  // namespace

std::uint64_t count_runs(const EnumerationRequest& request) {
  const auto space = randomness_space(request.protocol, request.n, request.options.ot);
  const std::uint64_t vectors =
      request.decisions ? 1 : (std::uint64_t{1} << (2 * request.n + 1));
  if (request.sampled) return saturating_mul(vectors, request.sampled->count);
  const std::uint64_t total = saturating_mul(vectors, space.size());
  if (total > request.bound) {
    throw CapacityError("exhaustive enumeration of " + std::to_string(total) +
                            " runs exceeds the bound of " + std::to_string(request.bound) +
                            "; use sampled randomness",
                        static_cast<std::size_t>(total));
  }
  return total;
}

void enumerate_runs(const EnumerationRequest& request,
                    const std::function<void(const RunRecord&)>& visit) {
  count_runs(request);
  const auto space = randomness_space(request.protocol, request.n, request.options.ot);
  const auto decisions = decision_space(request);
  visit_range(request, space, decisions, 0, decisions.size(), visit);
}

void enumerate_runs_parallel(const EnumerationRequest& request, std::size_t jobs,
                             const std::function<void(const RunRecord&)>& visit) {
  count_runs(request);
  const auto space = randomness_space(request.protocol, request.n, request.options.ot);
  const auto decisions = decision_space(request);
  jobs = std::clamp<std::size_t>(jobs, 1, decisions.size());
  if (jobs == 1) {
    visit_range(request, space, decisions, 0, decisions.size(), visit);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  const std::size_t chunk = (decisions.size() + jobs - 1) / jobs;
  for (std::size_t w = 0; w < jobs; ++w) {
    const std::size_t first = std::min(decisions.size(), w * chunk);
    const std::size_t last = std::min(decisions.size(), first + chunk);
    workers.emplace_back([&, w, first, last] {
      try {
        visit_range(request, space, decisions, first, last, visit);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace judgebench::protocols
