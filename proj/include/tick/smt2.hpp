#pragma once

#include <string>
#include <vector>

#include "tick/formula.hpp"
#include "tick/unroll.hpp"

namespace tick {

// All schedule variables of (up, N) in canonical declaration order:
// pc_t_k by thread then round, Y_k, X_k, then E_t_i by thread then index.
std::vector<SVar> variable_layout(const UnrolledProgram& up);

// Renders the formula set as an SMT-LIB 2 script: QF_LIA header, one named
// duration constant per statement bound to its value, declarations for
// every schedule variable, one assert per formula, check-sat, and a
// get-value query over the full layout. Output is deterministic byte for
// byte for a fixed input.
std::string serialize(const std::vector<Formula>& formulas,
                      const UnrolledProgram& up);

}  // namespace tick
