#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tick/encode.hpp"
#include "tick/schedule.hpp"
#include "tick/solver.hpp"
#include "tick/unroll.hpp"

namespace tick {

enum class VerdictKind { Holds, Violated, Error };

struct Timings {
  double encode_seconds = 0.0;
  double solve_seconds = 0.0;
};

struct VerifyResult {
  VerdictKind kind = VerdictKind::Error;
  int rounds = 0;
  std::optional<Schedule> schedule;             // Violated
  Bindings bindings;                            // Violated (raw model)
  std::vector<PropertyInstance> instances;      // all instantiations checked
  std::vector<std::size_t> failing;             // indices into `instances`
  std::string error;                            // Error
  std::size_t formula_nodes = 0;
  Timings timings;
};

// Builds sched /\ not(lambda) over all properties of the program and asks
// the solver. UNSAT means every property holds on all schedule prefixes of
// length <= rounds.
VerifyResult verify(const UnrolledProgram& up,
                    const std::vector<Property>& properties,
                    const SolverConfig& solver);

// All distinct schedules of the scheduling constraints alone, enumerated
// by repeatedly blocking the program-counter trajectory of each model.
struct EnumerationResult {
  std::vector<Schedule> schedules;
  std::vector<Bindings> models;
  bool hit_limit = false;
  std::string error;  // non-empty on solver failure
};
EnumerationResult enumerate_smt(const UnrolledProgram& up, std::size_t limit,
                                const SolverConfig& solver);

}  // namespace tick
