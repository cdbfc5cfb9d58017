#pragma once

#include <string>

#include "tick/oracle.hpp"
#include "tick/schedule.hpp"
#include "tick/unroll.hpp"
#include "tick/verify.hpp"

namespace tick {

// Round-by-round counterexample table with sleep intervals annotated
// between executed statements.
std::string render_schedule_table(const Schedule& schedule, const UnrolledProgram& up);

std::string render_verify_text(const VerifyResult& result, const UnrolledProgram& up);

// Stable structured (JSON) reports; timings live in their own object so
// the remainder is byte-identical across runs.
std::string render_verify_json(const VerifyResult& result, const UnrolledProgram& up,
                               const std::string& input_path);

// Human-readable one-line form of an executed statement, e.g. "t1.l2[2]".
std::string instance_label(const UnrolledProgram& up, int t, int i);

}  // namespace tick
