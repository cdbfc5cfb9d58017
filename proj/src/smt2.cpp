#include "tick/smt2.hpp"

#include <sstream>

namespace tick {

std::vector<SVar> variable_layout(const UnrolledProgram& up) {
  std::vector<SVar> vars;
  const int T = up.thread_count();
  const int N = up.rounds;
  for (int t = 1; t <= T; ++t) {
    for (int k = 1; k <= N + 1; ++k) vars.push_back({SVar::Kind::PC, t, k, 0});
  }
  for (int k = 1; k <= N + 1; ++k) vars.push_back({SVar::Kind::Y, 0, k, 0});
  for (int k = 1; k <= N + 1; ++k) vars.push_back({SVar::Kind::X, 0, k, 0});
  for (int t = 1; t <= T; ++t) {
    for (int i = 1; i <= up.thread(t).size(); ++i) vars.push_back({SVar::Kind::E, t, 0, i});
  }
  return vars;
}

std::string serialize(const std::vector<Formula>& formulas, const UnrolledProgram& up) {
  std::ostringstream out;
  out << "(set-logic QF_LIA)\n";

  // Durations as symbolic constants; edit the bound value to re-run the
  // analysis with different timings.
  out << "; durations\n";
  for (int t = 1; t <= up.thread_count(); ++t) {
    const auto& th = up.thread(t);
    for (int i = 1; i <= th.size(); ++i) {
      const std::string name = "D_" + std::to_string(t) + "_" + std::to_string(i);
      out << "(declare-const " << name << " Int) (assert (= " << name << " "
          << th.stmt(i).duration << "))\n";
    }
  }

  out << "; schedule variables\n";
  const auto layout = variable_layout(up);
  for (const auto& v : layout) {
    out << "(declare-const " << var_name(v) << " Int)\n";
  }

  out << "; constraints\n";
  for (const auto& f : formulas) {
    out << "(assert " << to_sexpr(f) << ")\n";
  }

  out << "(check-sat)\n";
  out << "(get-value (";
  for (size_t idx = 0; idx < layout.size(); ++idx) {
    if (idx) out << " ";
    out << var_name(layout[idx]);
  }
  out << "))\n";
  return out.str();
}

}  // namespace tick
