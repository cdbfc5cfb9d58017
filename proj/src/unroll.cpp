#include "tick/unroll.hpp"

#include <stdexcept>

namespace tick {

int UnrolledThread::position_of(const std::string& label, int iteration) const {
  for (int i = 1; i <= size(); ++i) {
    const auto& s = stmt(i);
    if (s.kind == UKind::Ordinary && s.origin_label == label && s.iteration == iteration) {
      return i;
    }
  }
  return 0;
}

int UnrolledProgram::thread_index(const std::string& name) const {
  for (int t = 1; t <= thread_count(); ++t) {
    if (thread(t).name == name) return t;
  }
  return 0;
}

int UnrolledProgram::total_ordinary() const {
  int total = 0;
  for (const auto& th : threads) total += static_cast<int>(th.ns_indices.size());
  return total;
}

std::vector<Stmt> normalize_sleeps(std::vector<Stmt> stmts) {
  std::vector<Stmt> out;
  for (auto& s : stmts) {
    if (s.kind == StmtKind::Loop) {
      s.body = normalize_sleeps(std::move(s.body));
      out.push_back(std::move(s));
      continue;
    }
    if (s.kind == StmtKind::Sleep && !out.empty() && out.back().kind == StmtKind::Sleep) {
      out.back().duration += s.duration;
      continue;
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

struct FlatStmt {
  std::string label;
  int iteration = 0;
  UKind kind = UKind::Ordinary;
  Time duration = 0;
};

void flatten(const std::vector<Stmt>& stmts, int loop_iterations,
             std::vector<FlatStmt>& out) {
  for (const auto& s : stmts) {
    switch (s.kind) {
      case StmtKind::Ordinary:
        out.push_back({s.label, 0, UKind::Ordinary, s.duration});
        break;
      case StmtKind::Sleep:
        out.push_back({"", 0, UKind::Sleep, s.duration});
        break;
      case StmtKind::Loop:
        for (int it = 1; it <= loop_iterations; ++it) {
          for (const auto& b : s.body) {
            if (b.kind == StmtKind::Ordinary) {
              out.push_back({b.label, it, UKind::Ordinary, b.duration});
            } else {
              out.push_back({"", it, UKind::Sleep, b.duration});
            }
          }
        }
        break;
    }
  }
}

// Merge adjacent sleeps after replication; the merged entry keeps the
// first sleep's iteration tag (sleeps are never referenced by name).
void merge_sleeps(std::vector<FlatStmt>& stmts) {
  std::vector<FlatStmt> out;
  for (auto& s : stmts) {
    if (s.kind == UKind::Sleep && !out.empty() && out.back().kind == UKind::Sleep) {
      out.back().duration += s.duration;
      continue;
    }
    out.push_back(std::move(s));
  }
  stmts = std::move(out);
}

}  // namespace

UnrolledProgram unroll(const SourceProgram& program, int loop_iterations,
                       std::optional<int> rounds) {
  if (loop_iterations < 1) throw std::invalid_argument("loop_iterations must be >= 1");
  if (rounds && *rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  if (program.threads.empty()) throw std::invalid_argument("program has no threads");

  std::vector<std::vector<FlatStmt>> flat;
  flat.reserve(program.threads.size());
  int total_ordinary = 0;
  for (const auto& th : program.threads) {
    std::vector<FlatStmt> stmts;
    flatten(th.stmts, loop_iterations, stmts);
    merge_sleeps(stmts);
    for (const auto& s : stmts) {
      if (s.kind == UKind::Ordinary) ++total_ordinary;
    }
    flat.push_back(std::move(stmts));
  }

  const int n = rounds ? *rounds : std::max(1, total_ordinary);

  UnrolledProgram up;
  up.rounds = n;
  up.loop_iterations = loop_iterations;
  for (size_t idx = 0; idx < flat.size(); ++idx) {
    auto& stmts = flat[idx];
    int ordinary = 0;
    for (const auto& s : stmts) {
      if (s.kind == UKind::Ordinary) ++ordinary;
    }
    const int keep_ordinary = std::min(n, ordinary);

    UnrolledThread ut;
    ut.name = program.threads[idx].name;
    if (ordinary == 0) {
      // All-sleep thread: normalization leaves exactly one sleep.
      for (const auto& s : stmts) {
        ut.stmts.push_back({s.label, s.iteration, s.kind, s.duration});
      }
    } else {
      int seen = 0;
      for (size_t j = 0; j < stmts.size(); ++j) {
        const auto& s = stmts[j];
        ut.stmts.push_back({s.label, s.iteration, s.kind, s.duration});
        if (s.kind == UKind::Ordinary && ++seen == keep_ordinary) {
          if (j + 1 < stmts.size() && stmts[j + 1].kind == UKind::Sleep) {
            const auto& tail = stmts[j + 1];
            ut.stmts.push_back({tail.label, tail.iteration, tail.kind, tail.duration});
          }
          break;
        }
      }
    }
    if (ut.stmts.empty()) {
      throw std::invalid_argument("thread '" + ut.name + "' has no statements");
    }
    for (int i = 1; i <= ut.size(); ++i) {
      if (ut.is_ordinary(i)) ut.ns_indices.push_back(i);
    }
    up.threads.push_back(std::move(ut));
  }
  return up;
}

}  // namespace tick
