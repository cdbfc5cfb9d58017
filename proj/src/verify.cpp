#include "tick/verify.hpp"

#include <chrono>

#include "tick/oracle.hpp"
#include "tick/smt2.hpp"

namespace tick {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Blocks the program-counter trajectory of a model: any future model must
// differ in at least one pc value. Times are functionally determined by
// the trajectory, so this enumerates exactly the distinct execution
// orders.
Formula blocking_clause(const Bindings& bindings, const UnrolledProgram& up) {
  std::vector<Formula> diffs;
  for (int t = 1; t <= up.thread_count(); ++t) {
    for (int k = 1; k <= up.rounds + 1; ++k) {
      const SVar v{SVar::Kind::PC, t, k, 0};
      diffs.push_back(ne(pc(t, k), cnum(bindings.at(var_name(v)))));
    }
  }
  return disj(std::move(diffs));
}

}  // namespace

VerifyResult verify(const UnrolledProgram& up, const std::vector<Property>& properties,
                    const SolverConfig& solver) {
  VerifyResult result;
  result.rounds = up.rounds;

  const auto encode_start = std::chrono::steady_clock::now();
  Encoder enc(up);
  std::vector<Formula> formulas = enc.gen_sched_parts();

  try {
    for (const auto& prop : properties) {
      auto instances = instantiate_property(up, prop);
      result.instances.insert(result.instances.end(), instances.begin(), instances.end());
    }
  } catch (const UnreachableUnderBound& e) {
    result.kind = VerdictKind::Error;
    result.error = e.what();
    return result;
  }
  formulas.push_back(neg(enc.gen_property(result.instances)));

  for (const auto& f : formulas) result.formula_nodes += node_count(f);
  const std::string text = serialize(formulas, up);
  result.timings.encode_seconds = seconds_since(encode_start);

  const auto solve_start = std::chrono::steady_clock::now();
  const SolverResult solved = run_solver(text, solver);
  result.timings.solve_seconds = seconds_since(solve_start);

  switch (solved.status) {
    case SolverStatus::Unsat:
      result.kind = VerdictKind::Holds;
      return result;
    case SolverStatus::Error:
      result.kind = VerdictKind::Error;
      result.error = solved.error;
      return result;
    case SolverStatus::Sat:
      break;
  }

  result.kind = VerdictKind::Violated;
  result.bindings = solved.values;
  result.schedule = decode(solved.values, up);
  result.failing = oracle::violated_instances(*result.schedule, result.instances);
  return result;
}

EnumerationResult enumerate_smt(const UnrolledProgram& up, std::size_t limit,
                                const SolverConfig& solver) {
  if (limit < 1) throw std::invalid_argument("enumeration limit must be >= 1");
  EnumerationResult result;

  Encoder enc(up);
  std::vector<Formula> formulas = enc.gen_sched_parts();
  while (result.schedules.size() < limit) {
    const SolverResult solved = run_solver(serialize(formulas, up), solver);
    if (solved.status == SolverStatus::Error) {
      result.error = solved.error;
      return result;
    }
    if (solved.status == SolverStatus::Unsat) return result;
    result.schedules.push_back(decode(solved.values, up));
    result.models.push_back(solved.values);
    formulas.push_back(blocking_clause(solved.values, up));
  }
  result.hit_limit = true;
  return result;
}

}  // namespace tick
