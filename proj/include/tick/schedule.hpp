#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tick/unroll.hpp"

namespace tick {

using Bindings = std::map<std::string, std::int64_t>;

struct ScheduleRound {
  int k = 0;
  std::optional<std::pair<int, int>> executed;  // (t, i); absent on padding rounds
  Time y = 0;
  Time x = 0;
};

// A decoded execution: per-round executed statement with round times, and
// the ending times of every statement whose E value is meaningful
// (scheduled ordinary statements, sleeps applied alongside them, and
// initial sleeps).
struct Schedule {
  std::vector<ScheduleRound> rounds;
  std::map<std::pair<int, int>, Time> end_times;

  std::vector<std::pair<int, int>> execution_order() const;
  bool was_executed(int t, int i) const;
};

// Thrown when solver bindings are inconsistent with the schedule shape the
// constraints guarantee; indicates an encoder bug, not user error.
struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reconstructs the schedule from a total model: round k executed the
// unique (t, i) with pc_t^(k) = i and pc_t^(k+1) > i.
Schedule decode(const Bindings& bindings, const UnrolledProgram& up);

// Structural checks every model of the scheduling constraints must pass:
// program counters in range and non-decreasing, X^(k) = Y^(k) + D for
// executed rounds, Y^(k+1) >= X^(k), chained round times, pairwise
// disjoint execution intervals, and eager start times. Returns one message
// per violation.
std::vector<std::string> model_invariant_violations(const Bindings& bindings,
                                                    const UnrolledProgram& up);

}  // namespace tick
