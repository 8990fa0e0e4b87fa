#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "judgebench/mck.hpp"

// Slow reference semantics used to cross-check the checker. Every operator is
// evaluated straight from its path/class definition, one state at a time.
namespace oracle {

using judgebench::kripke::KripkeModel;
using judgebench::mck::Formula;

// Random well-formed model: every state reachable, every state with a
// successor, dense observation classes. Binary verdict domain.
KripkeModel random_model(std::mt19937_64& rng, std::size_t states, std::size_t judges = 3);

// Random formula over the atoms and agents of a binary model.
Formula random_formula(std::mt19937_64& rng, std::size_t depth, std::size_t judges);

std::vector<std::uint8_t> naive_eval(const KripkeModel& m, const Formula& f);

}  // namespace oracle
