#include "tick/oracle.hpp"

#include <algorithm>
#include <limits>

namespace tick {
namespace oracle {

std::vector<std::pair<int, int>> SimSchedule::execution_order() const {
  std::vector<std::pair<int, int>> order;
  order.reserve(steps.size());
  for (const auto& s : steps) order.emplace_back(s.t, s.i);
  return order;
}

bool SimSchedule::was_executed(int t, int i) const {
  return std::any_of(steps.begin(), steps.end(),
                     [&](const SimStep& s) { return s.t == t && s.i == i; });
}

SimState initial_state(const UnrolledProgram& up) {
  SimState st;
  const int T = up.thread_count();
  st.pos.resize(static_cast<size_t>(T) + 1, 0);
  st.avail.resize(static_cast<size_t>(T) + 1, 0);

  bool any_ordinary_start = false;
  Time min_first_sleep = std::numeric_limits<Time>::max();
  for (int t = 1; t <= T; ++t) {
    const auto& th = up.thread(t);
    if (th.is_ordinary(1)) {
      st.pos[static_cast<size_t>(t)] = 1;
      st.avail[static_cast<size_t>(t)] = 0;
      any_ordinary_start = true;
    } else {
      st.pos[static_cast<size_t>(t)] = 2;
      st.avail[static_cast<size_t>(t)] = th.stmt(1).duration;
      min_first_sleep = std::min(min_first_sleep, th.stmt(1).duration);
    }
  }
  // The first round starts at time zero, or when the shortest initial
  // sleep ends; the minimum ranges over every thread, including those that
  // consist of a single sleep and never execute.
  st.now = any_ordinary_start ? 0 : min_first_sleep;
  return st;
}

std::vector<int> step_candidates(const UnrolledProgram& up, const SimState& state) {
  std::vector<int> out;
  for (int t = 1; t <= up.thread_count(); ++t) {
    if (state.pos[static_cast<size_t>(t)] > up.thread(t).size()) continue;
    if (state.avail[static_cast<size_t>(t)] <= state.now) out.push_back(t);
  }
  return out;
}

namespace {

struct Enumerator {
  const UnrolledProgram& up;
  const std::size_t cap;
  std::vector<SimSchedule> found;
  bool overflow = false;

  bool all_terminated(const SimState& st) const {
    for (int t = 1; t <= up.thread_count(); ++t) {
      if (st.pos[static_cast<size_t>(t)] <= up.thread(t).size()) return false;
    }
    return true;
  }

  Time min_wake(const SimState& st) const {
    Time m = std::numeric_limits<Time>::max();
    for (int t = 1; t <= up.thread_count(); ++t) {
      if (st.pos[static_cast<size_t>(t)] > up.thread(t).size()) continue;
      m = std::min(m, st.avail[static_cast<size_t>(t)]);
    }
    return m;
  }

  void emit(const SimSchedule& trace) {
    if (found.size() >= cap) {
      overflow = true;
      return;
    }
    found.push_back(trace);
  }

  // first_round: the constraints pin the start of round 1; when nothing is
  // executable exactly then, no schedule exists. Later rounds advance time
  // to the earliest wake.
  void explore(SimState st, SimSchedule trace, int executed, bool first_round) {
    if (overflow) return;
    if (executed == up.rounds || all_terminated(st)) {
      emit(trace);
      return;
    }
    auto candidates = step_candidates(up, st);
    if (candidates.empty()) {
      if (first_round) return;  // mirror of the init constraint
      st.now = min_wake(st);
      candidates = step_candidates(up, st);
    }
    for (int t : candidates) {
      SimState next = st;
      SimSchedule next_trace = trace;
      const auto& th = up.thread(t);
      const int i = next.pos[static_cast<size_t>(t)];
      const Time start = next.now;
      const Time end = start + th.stmt(i).duration;
      next_trace.steps.push_back({t, i, start, end});
      next_trace.end_times[{t, i}] = end;
      next.now = end;
      if (i + 1 <= th.size() && th.stmt(i + 1).kind == UKind::Sleep) {
        const Time wake = end + th.stmt(i + 1).duration;
        next_trace.end_times[{t, i + 1}] = wake;
        next.avail[static_cast<size_t>(t)] = wake;
        next.pos[static_cast<size_t>(t)] = i + 2;
      } else {
        next.avail[static_cast<size_t>(t)] = end;
        next.pos[static_cast<size_t>(t)] = i + 1;
      }
      explore(std::move(next), std::move(next_trace), executed + 1, false);
      if (overflow) return;
    }
  }
};

}  // namespace

EnumerateOutcome enumerate_schedules(const UnrolledProgram& up, EnumerateOptions opts) {
  Enumerator e{up, opts.cap, {}, false};
  SimState st = initial_state(up);

  SimSchedule empty;
  for (int t = 1; t <= up.thread_count(); ++t) {
    if (!up.thread(t).is_ordinary(1)) {
      empty.end_times[{t, 1}] = up.thread(t).stmt(1).duration;
    }
  }
  e.explore(std::move(st), std::move(empty), 0, true);
  return {std::move(e.found), e.overflow};
}

bool eval_resolved(const ResolvedExpr& expr,
                   const std::map<std::pair<int, int>, Time>& end_times) {
  switch (expr.kind) {
    case PropExpr::Kind::Atom:
      return end_times.at({expr.lhs.thread, expr.lhs.pos}) <
             end_times.at({expr.rhs.thread, expr.rhs.pos});
    case PropExpr::Kind::Not:
      return !eval_resolved(expr.args[0], end_times);
    case PropExpr::Kind::And:
      return eval_resolved(expr.args[0], end_times) && eval_resolved(expr.args[1], end_times);
    case PropExpr::Kind::Or:
      return eval_resolved(expr.args[0], end_times) || eval_resolved(expr.args[1], end_times);
    case PropExpr::Kind::Implies:
      return !eval_resolved(expr.args[0], end_times) || eval_resolved(expr.args[1], end_times);
  }
  return true;
}

bool check(const SimSchedule& schedule, const std::vector<PropertyInstance>& instances) {
  return violated_instances(schedule, instances).empty();
}

}  // namespace oracle
}  // namespace tick
