// tickcheck: bounded verification of precedence properties for
// multi-threaded programs with per-statement timing annotations.
//
// Subcommands:
//   verify    encode all schedules up to the bound and ask an SMT solver
//   emit      write the SMT-LIB encoding without solving
//   simulate  enumerate schedules explicitly and check properties directly

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tick/encode.hpp"
#include "tick/oracle.hpp"
#include "tick/parse.hpp"
#include "tick/render.hpp"
#include "tick/smt2.hpp"
#include "tick/solver.hpp"
#include "tick/verify.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitHolds = 0;
constexpr int kExitViolated = 1;
constexpr int kExitError = 2;

struct CommonOptions {
  std::string input;
  std::optional<int> rounds;
  int unroll = 1;
  std::string solver;
  double timeout = 60.0;
  std::string format = "text";
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_solver) {
  cmd->add_option("input", opts.input, "program file (.tick)")->required();
  cmd->add_option("--rounds", opts.rounds,
                  "schedule bound N (default: total ordinary statement count)");
  cmd->add_option("--unroll", opts.unroll, "loop unrolling depth (default 1)")
      ->check(CLI::PositiveNumber);
  if (with_solver) {
    cmd->add_option("--solver", opts.solver,
                    "solver command line (default: $TICKCHECK_SOLVER or 'z3 -in')");
    cmd->add_option("--timeout", opts.timeout, "solver timeout in seconds")
        ->check(CLI::PositiveNumber);
  }
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "structured"}));
}

int load_program(const CommonOptions& opts, tick::SourceProgram& program,
                 tick::UnrolledProgram& up) {
  std::ifstream file(opts.input);
  if (!file) {
    std::cerr << "error: cannot open '" << opts.input << "'\n";
    return kExitError;
  }
  std::stringstream buffer;
  buffer << file.rdbuf();

  const auto parsed = tick::parse_program(buffer.str());
  if (!parsed.ok()) {
    std::cerr << opts.input << ": parse failed\n"
              << tick::format_diagnostics(parsed.diagnostics);
    return kExitError;
  }
  program = parsed.value;
  try {
    up = tick::unroll(program, opts.unroll, opts.rounds);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitHolds;
}

tick::SolverConfig solver_config(const CommonOptions& opts) {
  tick::SolverConfig config;
  config.timeout_seconds = opts.timeout;
  if (!opts.solver.empty()) {
    std::istringstream in(opts.solver);
    std::string word;
    while (in >> word) config.command.push_back(word);
  }
  return config;
}

int cmd_verify(const CommonOptions& opts) {
  tick::SourceProgram program;
  tick::UnrolledProgram up;
  if (const int rc = load_program(opts, program, up); rc != kExitHolds) return rc;

  if (program.properties.empty()) {
    std::cerr << "warning: no properties declared; nothing to verify\n";
  }
  const auto result = tick::verify(up, program.properties, solver_config(opts));
  if (opts.format == "structured") {
    std::cout << tick::render_verify_json(result, up, opts.input);
  } else {
    std::cout << tick::render_verify_text(result, up);
  }
  switch (result.kind) {
    case tick::VerdictKind::Holds: return kExitHolds;
    case tick::VerdictKind::Violated: return kExitViolated;
    case tick::VerdictKind::Error: return kExitError;
  }
  return kExitError;
}

int cmd_emit(const CommonOptions& opts, const std::string& output) {
  tick::SourceProgram program;
  tick::UnrolledProgram up;
  if (const int rc = load_program(opts, program, up); rc != kExitHolds) return rc;

  const auto start = std::chrono::steady_clock::now();
  tick::Encoder enc(up);
  std::vector<tick::Formula> formulas = enc.gen_sched_parts();
  std::size_t nodes = 0;
  try {
    std::vector<tick::PropertyInstance> instances;
    for (const auto& prop : program.properties) {
      auto more = tick::instantiate_property(up, prop);
      instances.insert(instances.end(), more.begin(), more.end());
    }
    if (!instances.empty()) formulas.push_back(tick::neg(enc.gen_property(instances)));
  } catch (const tick::UnreachableUnderBound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  for (const auto& f : formulas) nodes += tick::node_count(f);
  const std::string text = tick::serialize(formulas, up);
  const double encode_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::string path = output;
  if (path.empty()) {
    path = std::filesystem::path(opts.input).replace_extension(".smt2").string();
  }
  if (path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(path);
    if (!out) {
      std::cerr << "error: cannot write '" << path << "'\n";
      return kExitError;
    }
    out << text;
  }

  if (opts.format == "structured") {
    ordered_json doc;
    doc["command"] = "emit";
    doc["input"] = opts.input;
    doc["output"] = path;
    doc["bound"] = up.rounds;
    doc["formula_nodes"] = nodes;
    doc["variables"] = tick::variable_layout(up).size();
    ordered_json timings;
    timings["encode_seconds"] = encode_seconds;
    doc["timings"] = std::move(timings);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "wrote " << path << " (bound N=" << up.rounds << ", " << nodes
              << " formula nodes, " << tick::variable_layout(up).size() << " variables)\n";
    std::cout << "encoding time: " << encode_seconds << "s\n";
  }
  return kExitHolds;
}

int cmd_simulate(const CommonOptions& opts, std::size_t cap) {
  tick::SourceProgram program;
  tick::UnrolledProgram up;
  if (const int rc = load_program(opts, program, up); rc != kExitHolds) return rc;

  std::vector<tick::PropertyInstance> instances;
  try {
    for (const auto& prop : program.properties) {
      auto more = tick::instantiate_property(up, prop);
      instances.insert(instances.end(), more.begin(), more.end());
    }
  } catch (const tick::UnreachableUnderBound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }

  const auto outcome = tick::oracle::enumerate_schedules(up, {cap});
  if (outcome.cap_exceeded) {
    std::cerr << "error: enumeration refused; the program has more than " << cap
              << " schedules within the bound\n";
    return kExitError;
  }

  std::size_t violating = 0;
  if (opts.format == "structured") {
    ordered_json doc;
    doc["command"] = "simulate";
    doc["input"] = opts.input;
    doc["bound"] = up.rounds;
    doc["schedule_count"] = outcome.schedules.size();
    ordered_json schedules = ordered_json::array();
    for (const auto& s : outcome.schedules) {
      ordered_json row;
      ordered_json steps = ordered_json::array();
      for (const auto& step : s.steps) {
        ordered_json j;
        j["statement"] = tick::instance_label(up, step.t, step.i);
        j["start"] = step.start;
        j["end"] = step.end;
        steps.push_back(std::move(j));
      }
      row["steps"] = std::move(steps);
      ordered_json bad = ordered_json::array();
      for (const auto idx : tick::oracle::violated_instances(s, instances)) {
        bad.push_back(instances[idx].display);
      }
      if (!bad.empty()) ++violating;
      row["violated"] = std::move(bad);
      schedules.push_back(std::move(row));
    }
    doc["schedules"] = std::move(schedules);
    doc["verdict"] = violating == 0 ? "holds" : "violated";
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << outcome.schedules.size() << " schedule(s) within bound N=" << up.rounds
              << "\n";
    std::size_t index = 0;
    for (const auto& s : outcome.schedules) {
      std::cout << "schedule " << ++index << ":";
      for (const auto& step : s.steps) {
        std::cout << " " << tick::instance_label(up, step.t, step.i) << "@[" << step.start
                  << "," << step.end << ")";
      }
      const auto bad = tick::oracle::violated_instances(s, instances);
      if (bad.empty()) {
        std::cout << "  ok\n";
      } else {
        ++violating;
        std::cout << "  VIOLATES";
        for (const auto idx : bad) std::cout << " " << instances[idx].display;
        std::cout << "\n";
      }
    }
    std::cout << (violating == 0 ? "all schedules satisfy the properties\n"
                                 : std::to_string(violating) + " schedule(s) violate the properties\n");
  }
  return violating == 0 ? kExitHolds : kExitViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bounded verifier for time-annotated multi-threaded programs"};
  app.require_subcommand(1);

  CommonOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "check precedence properties with an SMT solver");
  add_common(verify, verify_opts, /*with_solver=*/true);

  CommonOptions emit_opts;
  std::string emit_output;
  auto* emit = app.add_subcommand("emit", "write the SMT-LIB encoding");
  add_common(emit, emit_opts, /*with_solver=*/false);
  emit->add_option("-o,--output", emit_output, "output path ('-' for stdout)");

  CommonOptions sim_opts;
  std::size_t sim_cap = 100000;
  auto* simulate = app.add_subcommand("simulate", "enumerate schedules explicitly");
  add_common(simulate, sim_opts, /*with_solver=*/false);
  simulate->add_option("--cap", sim_cap, "refuse enumerations larger than this");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(verify_opts);
    if (emit->parsed()) return cmd_emit(emit_opts, emit_output);
    if (simulate->parsed()) return cmd_simulate(sim_opts, sim_cap);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
