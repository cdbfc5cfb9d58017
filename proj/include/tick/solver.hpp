#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tick {

// External SMT solver invocation. The command is an argv vector; the
// script is piped to the solver's standard input unless an argument equals
// "{file}", in which case it is substituted with the path of a temporary
// file holding the script.
struct SolverConfig {
  std::vector<std::string> command;  // empty: resolve via default_solver_command()
  double timeout_seconds = 60.0;
};

// TICKCHECK_SOLVER (whitespace-split) when set, otherwise {"z3", "-in"}.
std::vector<std::string> default_solver_command();

enum class SolverStatus { Sat, Unsat, Error };

struct SolverResult {
  SolverStatus status = SolverStatus::Error;
  std::map<std::string, std::int64_t> values;  // get-value bindings on Sat
  std::string error;                           // message on Error
  std::string raw;                             // captured solver stdout
};

// Runs one solver process to completion on `smt2_text`. A timeout or an
// unrecognizable answer yields SolverStatus::Error, never a verdict.
SolverResult run_solver(const std::string& smt2_text, const SolverConfig& config);

// Subprocess plumbing, exposed for tests.
struct ExecResult {
  int exit_code = -1;
  bool timed_out = false;
  bool spawn_failed = false;
  std::string out;
  std::string err;
};
ExecResult run_process(const std::vector<std::string>& argv,
                       const std::string& input, double timeout_seconds);

}  // namespace tick
