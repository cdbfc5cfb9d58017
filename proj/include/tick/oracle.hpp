#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "tick/encode.hpp"
#include "tick/schedule.hpp"
#include "tick/unroll.hpp"

namespace tick {

// Brute-force enumeration of eager single-processor schedules, independent
// of the constraint encoding. Ground truth for differential tests.
namespace oracle {

struct SimStep {
  int t = 0;
  int i = 0;  // unrolled position executed
  Time start = 0;
  Time end = 0;
};

struct SimSchedule {
  std::vector<SimStep> steps;
  std::map<std::pair<int, int>, Time> end_times;  // incl. applied sleeps
  std::vector<std::pair<int, int>> execution_order() const;
  bool was_executed(int t, int i) const;
};

struct SimState {
  Time now = 0;
  std::vector<int> pos;     // per thread, next statement (1-based); > n_t = terminated
  std::vector<Time> avail;  // per thread, earliest time it may execute
};

SimState initial_state(const UnrolledProgram& up);

// Threads that may execute at state.now: not terminated and awake. Ignores
// whether time could first be advanced; callers advance to the minimum
// wake time when the set is empty and live threads remain.
std::vector<int> step_candidates(const UnrolledProgram& up, const SimState& state);

struct EnumerateOptions {
  std::size_t cap = 100000;  // refuse larger enumerations
};

struct EnumerateOutcome {
  std::vector<SimSchedule> schedules;
  bool cap_exceeded = false;
};

// Depth-first branch over every candidate at every decision point, up to
// `up.rounds` executed statements per schedule.
EnumerateOutcome enumerate_schedules(const UnrolledProgram& up,
                                     EnumerateOptions opts = {});

// True when every instantiation whose references were all executed
// satisfies the instantiated combination.
bool check(const SimSchedule& schedule, const std::vector<PropertyInstance>& instances);

bool eval_resolved(const ResolvedExpr& expr,
                   const std::map<std::pair<int, int>, Time>& end_times);

// Instantiations violated by the schedule (guard satisfied, body false).
// Works on either engine's output through the (executed, end-times) view.
template <typename Sched>
std::vector<std::size_t> violated_instances(const Sched& schedule,
                                            const std::vector<PropertyInstance>& instances) {
  std::vector<std::size_t> out;
  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    const auto& inst = instances[idx];
    bool scheduled = true;
    for (const auto& r : inst.refs) {
      if (!schedule.was_executed(r.thread, r.pos)) {
        scheduled = false;
        break;
      }
    }
    if (scheduled && !eval_resolved(inst.expr, schedule.end_times)) {
      out.push_back(idx);
    }
  }
  return out;
}

}  // namespace oracle
}  // namespace tick
