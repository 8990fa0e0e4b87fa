#pragma once

#include <string>
#include <vector>

#include "judgebench/protocols.hpp"

namespace judgebench::protocols::detail {

// Emits the events of one single-bit oblivious transfer starting at `round`
// and returns the bit the receiver ends up with. `next_round` is set to the
// first round after the transfer.
int transfer_bit(std::vector<TraceEvent>& events, int round, int sender, int receiver,
                 const std::string& label, int m0, int m1, int choice,
                 const ot::OtInitPackage& pkg, OtMode mode, int& next_round);

void emit(std::vector<TraceEvent>& events, int round, int sender, int receiver,
          std::string label, std::vector<int> payload, ChannelKind kind,
          std::vector<int> visible_to);

// Fills record.views from the events plus each judge's own randomness.
void assemble_views(RunRecord& record, const std::vector<std::vector<LabeledValue>>& own_randomness);

void check_judge_count(const DecisionVector& decisions, std::size_t minimum);

}  // namespace judgebench::protocols::detail
