#include <regex>

#include "doctest.h"
#include "test_util.hpp"
#include "tick/solver.hpp"

using namespace tick;

namespace {

std::string cli_bin() { return tick_test::env_or("TICKCHECK_BIN", "build/tickcheck"); }

ExecResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), cli_bin());
  return run_process(args, "", 120.0);
}

// The JSON report is byte-stable except for the timings object.
std::string strip_timings(const std::string& report) {
  return std::regex_replace(report, std::regex("\"timings\": \\{[^}]*\\}"), "\"timings\": {}");
}

}  // namespace

TEST_CASE("cli verify exit codes") {
  auto holds = run_cli({"verify", tick_test::samples_dir() + "/toy.tick"});
  CHECK(holds.exit_code == 0);
  CHECK(holds.out.find("HOLDS (bound N=3)") != std::string::npos);

  auto violated = run_cli({"verify", tick_test::samples_dir() + "/toy_slow.tick"});
  CHECK(violated.exit_code == 1);
  CHECK(violated.out.find("VIOLATED") != std::string::npos);
  CHECK(violated.out.find("t2 sleeps") == std::string::npos);  // no sleep follows any stmt here
  CHECK(violated.out.find("initial sleeps: t2 until 2") != std::string::npos);
}

TEST_CASE("cli reports parse diagnostics with positions") {
  const std::string bad = "/tmp/tickcheck_bad_input.tick";
  {
    std::ofstream f(bad);
    f << "thread t {\n  stmt a dur 0;\n}\n";
  }
  auto result = run_cli({"verify", bad});
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("2:14") != std::string::npos);
  CHECK(result.err.find("duration must be at least 1") != std::string::npos);
}

TEST_CASE("cli flags unreachable properties under a small bound") {
  auto result = run_cli({"verify", tick_test::samples_dir() + "/toy.tick", "--rounds", "1"});
  CHECK(result.exit_code == 2);
  CHECK(result.out.find("unreachable under the bound") != std::string::npos);
}

TEST_CASE("structured verify output is stable modulo timings") {
  const std::vector<std::string> args = {"verify", tick_test::samples_dir() + "/toy_slow.tick",
                                         "--format", "structured"};
  auto first = run_cli(args);
  auto second = run_cli(args);
  REQUIRE(first.exit_code == 1);
  REQUIRE(second.exit_code == 1);
  CHECK(strip_timings(first.out) == strip_timings(second.out));
  CHECK(first.out.find("\"verdict\": \"violated\"") != std::string::npos);
  CHECK(first.out.find("\"counterexample\"") != std::string::npos);
}

TEST_CASE("cli simulate agrees with verify on the samples") {
  auto toy = run_cli({"simulate", tick_test::samples_dir() + "/toy.tick"});
  CHECK(toy.exit_code == 0);
  CHECK(toy.out.find("1 schedule(s)") != std::string::npos);

  auto slow = run_cli({"simulate", tick_test::samples_dir() + "/toy_slow.tick"});
  CHECK(slow.exit_code == 1);
  CHECK(slow.out.find("2 schedule(s)") != std::string::npos);
  CHECK(slow.out.find("VIOLATES consumer_last") != std::string::npos);
}

TEST_CASE("cli simulate refuses oversized enumerations") {
  const std::string big = "/tmp/tickcheck_big_input.tick";
  {
    std::ofstream f(big);
    for (int t = 0; t < 3; ++t) {
      f << "thread t" << t << " {\n";
      for (int s = 0; s < 8; ++s) f << "  stmt s" << s << " dur 1;\n";
      f << "}\n";
    }
  }
  auto result = run_cli({"simulate", big, "--cap", "50"});
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("more than 50 schedules") != std::string::npos);
}

TEST_CASE("cli emit writes the encoding and reports node counts") {
  auto result = run_cli({"emit", tick_test::samples_dir() + "/toy.tick", "-o", "-"});
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("(set-logic QF_LIA)") != std::string::npos);
  CHECK(result.out.find("(check-sat)") != std::string::npos);
  CHECK(result.out.find("formula nodes") != std::string::npos);
}

TEST_CASE("cli verify with an explicit broken solver") {
  auto result = run_cli({"verify", tick_test::samples_dir() + "/toy.tick", "--solver",
                         "/no/such/solver"});
  CHECK(result.exit_code == 2);
  CHECK(result.out.find("ERROR") != std::string::npos);
}
