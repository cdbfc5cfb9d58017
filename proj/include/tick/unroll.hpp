#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tick/program.hpp"

namespace tick {

enum class UKind { Ordinary, Sleep };

// Entry of a loop-free per-thread statement sequence. `iteration` is 0 for
// statements outside any loop and 1-based for loop replicas.
struct UnrolledStmt {
  std::string origin_label;  // empty for sleeps
  int iteration = 0;
  UKind kind = UKind::Ordinary;
  Time duration = 0;
};

struct UnrolledThread {
  std::string name;
  std::vector<UnrolledStmt> stmts;  // 1-based access via stmt(i)
  std::vector<int> ns_indices;      // positions (1-based) of Ordinary entries

  int size() const { return static_cast<int>(stmts.size()); }
  const UnrolledStmt& stmt(int i) const { return stmts.at(static_cast<size_t>(i) - 1); }
  bool is_ordinary(int i) const { return stmt(i).kind == UKind::Ordinary; }
  // Position of `label`/`iteration`, or 0 when the instance was never
  // produced or was truncated away.
  int position_of(const std::string& label, int iteration) const;
};

struct UnrolledProgram {
  std::vector<UnrolledThread> threads;
  int rounds = 0;            // N
  int loop_iterations = 1;   // depth the loops were unrolled to

  int thread_count() const { return static_cast<int>(threads.size()); }
  const UnrolledThread& thread(int t) const { return threads.at(static_cast<size_t>(t) - 1); }
  int thread_index(const std::string& name) const;  // 1-based, 0 if absent
  int total_ordinary() const;
};

// Merges runs of adjacent sleeps into a single sleep of the summed
// duration, recursing into loop bodies. Order and ordinary statements are
// preserved.
std::vector<Stmt> normalize_sleeps(std::vector<Stmt> stmts);

// Replicates every loop body `loop_iterations` times, merges adjacent
// sleeps (including across replica boundaries), then truncates each thread
// to the prefix holding min(rounds, available) ordinary statements plus a
// trailing sleep when one immediately follows. When `rounds` is absent it
// defaults to the total ordinary count across threads, so every statement
// can be scheduled.
UnrolledProgram unroll(const SourceProgram& program, int loop_iterations,
                       std::optional<int> rounds = std::nullopt);

}  // namespace tick
