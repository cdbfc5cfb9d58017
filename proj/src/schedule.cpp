#include "tick/schedule.hpp"

#include <algorithm>
#include <sstream>

#include "tick/formula.hpp"

namespace tick {

std::vector<std::pair<int, int>> Schedule::execution_order() const {
  std::vector<std::pair<int, int>> order;
  for (const auto& r : rounds) {
    if (r.executed) order.push_back(*r.executed);
  }
  return order;
}

bool Schedule::was_executed(int t, int i) const {
  return std::any_of(rounds.begin(), rounds.end(), [&](const ScheduleRound& r) {
    return r.executed && r.executed->first == t && r.executed->second == i;
  });
}

namespace {

std::int64_t lookup(const Bindings& bindings, const SVar& v) {
  const auto it = bindings.find(var_name(v));
  if (it == bindings.end()) {
    throw DecodeError("model is missing a value for " + var_name(v));
  }
  return it->second;
}

std::int64_t pc_at(const Bindings& b, int t, int k) { return lookup(b, {SVar::Kind::PC, t, k, 0}); }
std::int64_t y_at(const Bindings& b, int k) { return lookup(b, {SVar::Kind::Y, 0, k, 0}); }
std::int64_t x_at(const Bindings& b, int k) { return lookup(b, {SVar::Kind::X, 0, k, 0}); }
std::int64_t e_at(const Bindings& b, int t, int i) { return lookup(b, {SVar::Kind::E, t, 0, i}); }

}  // namespace

Schedule decode(const Bindings& bindings, const UnrolledProgram& up) {
  Schedule schedule;
  const int T = up.thread_count();
  const int N = up.rounds;

  for (int k = 1; k <= N; ++k) {
    ScheduleRound round;
    round.k = k;
    round.y = y_at(bindings, k);
    round.x = x_at(bindings, k);

    int movers = 0;
    bool all_terminated = true;
    for (int t = 1; t <= T; ++t) {
      const int n = up.thread(t).size();
      const std::int64_t cur = pc_at(bindings, t, k);
      const std::int64_t nxt = pc_at(bindings, t, k + 1);
      if (cur != n + 1) all_terminated = false;
      if (nxt > cur) {
        ++movers;
        if (cur < 1 || cur > n || !up.thread(t).is_ordinary(static_cast<int>(cur))) {
          throw DecodeError("round " + std::to_string(k) + ": pc of thread " +
                            std::to_string(t) + " advanced from non-ordinary position " +
                            std::to_string(cur));
        }
        round.executed = {t, static_cast<int>(cur)};
      } else if (nxt < cur) {
        throw DecodeError("round " + std::to_string(k) + ": pc of thread " +
                          std::to_string(t) + " decreased");
      }
    }
    if (movers > 1) {
      throw DecodeError("round " + std::to_string(k) + ": several threads advanced");
    }
    if (movers == 0 && !all_terminated) {
      throw DecodeError("round " + std::to_string(k) +
                        ": no thread advanced but the program has not terminated");
    }
    if (round.executed) {
      const auto [t, i] = *round.executed;
      const std::int64_t e = e_at(bindings, t, i);
      if (e != round.x) {
        throw DecodeError("round " + std::to_string(k) + ": E mismatch for executed statement");
      }
      schedule.end_times[{t, i}] = e;
      const auto& th = up.thread(t);
      if (i + 1 <= th.size() && th.stmt(i + 1).kind == UKind::Sleep) {
        schedule.end_times[{t, i + 1}] = e_at(bindings, t, i + 1);
      }
    }
    schedule.rounds.push_back(round);
  }

  // Initial sleeps always have meaningful ending times.
  for (int t = 1; t <= T; ++t) {
    if (!up.thread(t).is_ordinary(1)) {
      schedule.end_times[{t, 1}] = e_at(bindings, t, 1);
    }
  }
  return schedule;
}

namespace {

void report(std::vector<std::string>& out, const std::string& msg) { out.push_back(msg); }

}  // namespace

std::vector<std::string> model_invariant_violations(const Bindings& bindings,
                                                    const UnrolledProgram& up) {
  std::vector<std::string> violations;
  const int T = up.thread_count();
  const int N = up.rounds;

  // pc range and monotonicity.
  for (int t = 1; t <= T; ++t) {
    const auto& th = up.thread(t);
    const int n = th.size();
    std::int64_t prev = 0;
    for (int k = 1; k <= N + 1; ++k) {
      const std::int64_t v = pc_at(bindings, t, k);
      const bool in_ns = v >= 1 && v <= n && th.is_ordinary(static_cast<int>(v));
      if (!in_ns && v != n + 1) {
        report(violations, "pc_" + std::to_string(t) + "_" + std::to_string(k) +
                               " = " + std::to_string(v) + " outside NS u {n+1}");
      }
      if (k > 1 && v < prev) {
        report(violations, "pc of thread " + std::to_string(t) + " decreases at round " +
                               std::to_string(k));
      }
      prev = v;
    }
  }

  // Per-round chaining: X = Y + D on executed rounds, Y^(k+1) >= X^(k),
  // eager start (Y^(k+1) == X^(k) unless every live thread sleeps past X).
  struct Interval {
    std::int64_t lo, hi;
    int t, i;
  };
  std::vector<Interval> intervals;
  for (int k = 1; k <= N; ++k) {
    const std::int64_t y = y_at(bindings, k);
    const std::int64_t x = x_at(bindings, k);
    int mover_t = 0, mover_i = 0;
    bool all_terminated_now = true;
    for (int t = 1; t <= T; ++t) {
      const std::int64_t cur = pc_at(bindings, t, k);
      if (cur != up.thread(t).size() + 1) all_terminated_now = false;
      if (pc_at(bindings, t, k + 1) > cur) {
        mover_t = t;
        mover_i = static_cast<int>(cur);
      }
    }
    if (mover_t) {
      const auto d = up.thread(mover_t).stmt(mover_i).duration;
      if (x != y + d) {
        report(violations, "round " + std::to_string(k) + ": X != Y + D");
      }
      intervals.push_back({x - d, x, mover_t, mover_i});
    }
    if (!mover_t && !all_terminated_now) {
      report(violations, "round " + std::to_string(k) + ": stalled without termination");
    }
    if (k <= N) {
      const std::int64_t y_next = y_at(bindings, k + 1);
      if (y_next < x) {
        report(violations, "round " + std::to_string(k) + ": Y^(k+1) < X^(k)");
      }
      if (mover_t && y_next > x) {
        // Time may only jump when every live thread is asleep past X^(k).
        for (int t = 1; t <= T; ++t) {
          const std::int64_t nxt = pc_at(bindings, t, k + 1);
          const int n = up.thread(t).size();
          if (nxt == n + 1) continue;
          if (nxt == 1) {
            report(violations, "round " + std::to_string(k) +
                                   ": time jumped past an executable thread");
            break;
          }
          const std::int64_t wake = e_at(bindings, t, static_cast<int>(nxt) - 1);
          if (wake <= x) {
            report(violations, "round " + std::to_string(k) +
                                   ": time jumped past an executable thread");
            break;
          }
          if (y_next > wake) {
            report(violations, "round " + std::to_string(k) +
                                   ": Y^(k+1) overshoots the earliest wake time");
            break;
          }
        }
      }
    }
  }

  // Single processor: execution intervals are pairwise disjoint.
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (size_t idx = 1; idx < intervals.size(); ++idx) {
    if (intervals[idx].lo < intervals[idx - 1].hi) {
      report(violations, "overlapping execution intervals for thread " +
                             std::to_string(intervals[idx - 1].t) + " and thread " +
                             std::to_string(intervals[idx].t));
    }
  }
  return violations;
}

}  // namespace tick
