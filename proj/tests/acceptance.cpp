// Acceptance suite: runs every gating criterion end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "tick/encode.hpp"
#include "tick/oracle.hpp"
#include "tick/parse.hpp"
#include "tick/render.hpp"
#include "tick/schedule.hpp"
#include "tick/smt2.hpp"
#include "tick/solver.hpp"
#include "tick/unroll.hpp"
#include "tick/verify.hpp"

using namespace tick;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& text) {
  std::cout << "ACCEPT " << criterion << " " << (pass ? "PASS" : "FAIL") << " - " << text
            << std::endl;
  if (!pass) ++failures;
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? v : fallback;
}

std::string samples_dir() { return env_or("TICKCHECK_SAMPLES", "samples"); }

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

SourceProgram parse_or_throw(const std::string& text) {
  auto out = parse_program(text);
  if (!out.ok()) {
    throw std::runtime_error("parse failure:\n" + format_diagnostics(out.diagnostics));
  }
  return out.value;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Shared tally for the model-invariant criterion: every SAT model decoded
// anywhere in this suite is checked.
std::mutex invariant_mutex;
size_t invariant_models = 0;
size_t invariant_violations = 0;

void check_invariants(const Bindings& bindings, const UnrolledProgram& up) {
  const auto violations = model_invariant_violations(bindings, up);
  std::lock_guard<std::mutex> lock(invariant_mutex);
  ++invariant_models;
  invariant_violations += violations.size();
  for (const auto& v : violations) {
    std::cout << "  invariant violation: " << v << std::endl;
  }
}

// --------------------------------------------------------------------------
// Criterion 1+2: toy program through the real CLI, then decoded in-process.

void criterion_1_toy_holds() {
  try {
    const auto start = Clock::now();
    const std::string bin = env_or("TICKCHECK_BIN", "build/tickcheck");
    auto exec = run_process({bin, "verify", samples_dir() + "/toy.tick"}, "", 60.0);
    const double elapsed = seconds_since(start);
    const bool pass = exec.exit_code == 0 &&
                      exec.out.find("HOLDS (bound N=3)") != std::string::npos && elapsed < 5.0;
    std::ostringstream msg;
    msg << "toy example verifies HOLDS at N=3 in " << elapsed << "s (exit "
        << exec.exit_code << ")";
    report(1, pass, msg.str());
  } catch (const std::exception& e) {
    report(1, false, std::string("exception: ") + e.what());
  }
}

void criterion_2_mutated_toy() {
  try {
    const std::string bin = env_or("TICKCHECK_BIN", "build/tickcheck");
    auto exec = run_process({bin, "verify", samples_dir() + "/toy_slow.tick"}, "", 60.0);
    bool pass = exec.exit_code == 1 && exec.out.find("VIOLATED") != std::string::npos;

    auto prog = parse_or_throw(read_file(samples_dir() + "/toy_slow.tick"));
    auto up = unroll(prog, 1);
    auto result = verify(up, prog.properties, SolverConfig{});
    pass = pass && result.kind == VerdictKind::Violated && result.schedule.has_value();
    std::string detail;
    if (result.schedule) {
      check_invariants(result.bindings, up);
      std::vector<std::string> order;
      for (const auto& [t, i] : result.schedule->execution_order()) {
        order.push_back(instance_label(up, t, i));
      }
      pass = pass && order == std::vector<std::string>{"t1.l11", "t2.l22", "t1.l12"};
      pass = pass && result.schedule->end_times.at({1, 1}) == 2 &&
             result.schedule->end_times.at({2, 2}) == 4 &&
             result.schedule->end_times.at({1, 2}) == 6;

      // Cross-check the end times against the oracle's matching schedule.
      auto sim = oracle::enumerate_schedules(up);
      bool oracle_match = false;
      for (const auto& s : sim.schedules) {
        if (s.execution_order() == result.schedule->execution_order()) {
          oracle_match = s.end_times.at({1, 1}) == 2 && s.end_times.at({2, 2}) == 4 &&
                         s.end_times.at({1, 2}) == 6;
        }
      }
      pass = pass && oracle_match;
      detail = " order l11,l22,l12 with end times 2,4,6";
    }
    report(2, pass, "mutated toy reports the interleaved counterexample" + detail);
  } catch (const std::exception& e) {
    report(2, false, std::string("exception: ") + e.what());
  }
}

// --------------------------------------------------------------------------
// Criterion 3: pipeline family.

std::string pipeline_text(int consumers) {
  std::ostringstream out;
  out << "thread p {\n  stmt l1 dur 1;\n  stmt l2 dur 2;\n}\n";
  for (int j = 1; j <= consumers; ++j) {
    out << "thread c" << j << " {\n  sleep " << (2 * j + 1) << ";\n  stmt l4 dur 2;\n}\n";
  }
  out << "property pipeline_order { before(p.l2, c1.l4)";
  for (int j = 1; j < consumers; ++j) {
    out << " and before(c" << j << ".l4, c" << j + 1 << ".l4)";
  }
  out << " }\n";
  return out.str();
}

void criterion_3_pipeline() {
  try {
    bool pass = true;
    std::ostringstream msg;
    msg << "pipeline family holds:";
    for (int k : {2, 3, 5, 10}) {
      const auto start = Clock::now();
      auto prog = parse_or_throw(pipeline_text(k));
      auto up = unroll(prog, 1);
      auto result = verify(up, prog.properties, SolverConfig{});
      const double elapsed = seconds_since(start);
      const bool ok = result.kind == VerdictKind::Holds && elapsed < 60.0;
      pass = pass && ok;
      msg << " k=" << k << (ok ? " ok(" : " FAIL(") << std::fixed << std::setprecision(2)
          << elapsed << "s)";
    }
    report(3, pass, msg.str());
  } catch (const std::exception& e) {
    report(3, false, std::string("exception: ") + e.what());
  }
}

// --------------------------------------------------------------------------
// Criterion 4: loop family, N = 2L+1.

void criterion_4_loops() {
  try {
    const std::string text = read_file(samples_dir() + "/loop.tick");
    bool pass = true;
    std::ostringstream msg;
    msg << "loop family holds:";
    for (int L : {2, 3, 5}) {
      const auto start = Clock::now();
      auto prog = parse_or_throw(text);
      auto up = unroll(prog, L);
      const bool bound_ok = up.rounds == 2 * L + 1;
      auto result = verify(up, prog.properties, SolverConfig{});
      const double elapsed = seconds_since(start);
      const bool ok = bound_ok && result.kind == VerdictKind::Holds && elapsed < 60.0;
      pass = pass && ok;
      msg << " L=" << L << (ok ? " ok(" : " FAIL(") << std::fixed << std::setprecision(2)
          << elapsed << "s)";
    }
    report(4, pass, msg.str());
  } catch (const std::exception& e) {
    report(4, false, std::string("exception: ") + e.what());
  }
}

// --------------------------------------------------------------------------
// Criterion 5: conflict detected in loop iteration 2.

void criterion_5_conflict() {
  try {
    auto prog = parse_or_throw(read_file(samples_dir() + "/conflict.tick"));
    auto up = unroll(prog, 2);
    auto result = verify(up, prog.properties, SolverConfig{});
    bool pass = result.kind == VerdictKind::Violated && !result.failing.empty();
    if (pass) {
      check_invariants(result.bindings, up);
      for (const auto idx : result.failing) {
        pass = pass && result.instances[idx].iteration == 2;
      }
    }
    report(5, pass, "conflict program is VIOLATED with the violation in loop iteration 2");
  } catch (const std::exception& e) {
    report(5, false, std::string("exception: ") + e.what());
  }
}

// --------------------------------------------------------------------------
// Criterion 6: differential suite against the oracle.

struct RandomCase {
  SourceProgram prog;
  int unroll_depth = 1;
  int rounds = 1;
};

RandomCase random_case(std::mt19937& rng) {
  auto pick = [&rng](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
  };
  while (true) {
    RandomCase c;
    const int threads = pick(1, 3);
    for (int t = 0; t < threads; ++t) {
      ThreadDef def;
      def.name = "t" + std::to_string(t + 1);
      const int count = pick(1, 4);
      std::vector<Stmt> body;
      for (int s = 0; s < count; ++s) {
        if (pick(1, 3) == 1) {
          body.push_back(Stmt::sleep(pick(1, 3)));
        } else {
          body.push_back(
              Stmt::ordinary("s" + std::to_string(t + 1) + "_" + std::to_string(s), pick(1, 3)));
        }
      }
      if (pick(1, 4) == 1) {
        def.stmts.push_back(Stmt::loop(std::move(body)));
      } else {
        def.stmts = std::move(body);
      }
      c.prog.threads.push_back(std::move(def));
    }
    c.unroll_depth = pick(1, 2);
    c.rounds = pick(1, 6);

    // Property atoms draw from labels outside loops so no index expression
    // is needed.
    std::vector<PropRef> refs;
    for (const auto& th : c.prog.threads) {
      for (const auto& s : th.stmts) {
        if (s.kind == StmtKind::Ordinary) refs.push_back({th.name, s.label, {}});
      }
    }
    if (refs.empty()) continue;

    const int atoms = pick(1, 3);
    std::vector<PropExpr> exprs;
    for (int a = 0; a < atoms; ++a) {
      PropRef lhs = refs[static_cast<size_t>(pick(0, static_cast<int>(refs.size()) - 1))];
      PropRef rhs = refs[static_cast<size_t>(pick(0, static_cast<int>(refs.size()) - 1))];
      PropExpr e = PropExpr::atom(lhs, rhs);
      if (pick(1, 4) == 1) e = PropExpr::neg(std::move(e));
      exprs.push_back(std::move(e));
    }
    PropExpr combined = exprs[0];
    for (size_t a = 1; a < exprs.size(); ++a) {
      switch (pick(1, 3)) {
        case 1: combined = PropExpr::conj(std::move(combined), exprs[a]); break;
        case 2: combined = PropExpr::disj(std::move(combined), exprs[a]); break;
        default: combined = PropExpr::implies(std::move(combined), exprs[a]); break;
      }
    }
    c.prog.properties.push_back({"p", std::move(combined)});

    // Properties must survive truncation for the comparison to be
    // meaningful; retry otherwise.
    try {
      auto up = unroll(c.prog, c.unroll_depth, c.rounds);
      instantiate_property(up, c.prog.properties[0]);
    } catch (const std::exception&) {
      continue;
    }
    return c;
  }
}

struct DifferentialOutcome {
  bool verdicts_agree = false;
  bool enumerated = false;       // took part in the enumeration comparison
  bool enumeration_equal = false;
  std::string note;
};

DifferentialOutcome run_differential(const RandomCase& c, bool try_enumeration) {
  DifferentialOutcome out;
  auto up = unroll(c.prog, c.unroll_depth, c.rounds);
  auto instances = instantiate_property(up, c.prog.properties[0]);

  auto sim = oracle::enumerate_schedules(up, {.cap = 250000});
  if (sim.cap_exceeded) {
    out.note = "oracle cap exceeded";
    return out;
  }
  bool oracle_violated = false;
  for (const auto& s : sim.schedules) {
    if (!oracle::check(s, instances)) {
      oracle_violated = true;
      break;
    }
  }

  auto result = verify(up, c.prog.properties, SolverConfig{});
  if (result.kind == VerdictKind::Error) {
    out.note = "solver error: " + result.error;
    return out;
  }
  const bool smt_violated = result.kind == VerdictKind::Violated;
  out.verdicts_agree = smt_violated == oracle_violated;
  if (!out.verdicts_agree) {
    out.note = "verdict mismatch (smt " + std::string(smt_violated ? "violated" : "holds") +
               ", oracle " + (oracle_violated ? "violated" : "holds") + "): " +
               pretty_print(c.prog);
    return out;
  }
  if (smt_violated) check_invariants(result.bindings, up);

  if (try_enumeration && sim.schedules.size() <= 6) {
    auto smt = enumerate_smt(up, sim.schedules.size() + 2, SolverConfig{});
    if (!smt.error.empty()) {
      out.note = "solver error during enumeration: " + smt.error;
      return out;
    }
    out.enumerated = true;
    std::set<std::vector<std::pair<int, int>>> smt_orders, sim_orders;
    for (const auto& s : smt.schedules) smt_orders.insert(s.execution_order());
    for (const auto& s : sim.schedules) sim_orders.insert(s.execution_order());
    out.enumeration_equal = smt_orders == sim_orders;
    if (!out.enumeration_equal) {
      out.note = "enumeration mismatch (smt " + std::to_string(smt_orders.size()) +
                 " orders, oracle " + std::to_string(sim_orders.size()) + "): " +
                 pretty_print(c.prog);
    }
    for (const auto& bindings : smt.models) check_invariants(bindings, up);
  }
  return out;
}

void criterion_6_differential() {
  try {
    std::mt19937 rng(0x5eed5u);
    constexpr int kCases = 200;
    std::vector<RandomCase> cases;
    cases.reserve(kCases);
    for (int i = 0; i < kCases; ++i) cases.push_back(random_case(rng));

    std::vector<DifferentialOutcome> outcomes(cases.size());
    std::atomic<size_t> next{0};
    std::atomic<int> enumerated_so_far{0};
    constexpr int kEnumerationTarget = 60;

    const unsigned workers = std::min(8u, std::max(2u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const size_t idx = next.fetch_add(1);
          if (idx >= cases.size()) return;
          const bool enumerate = enumerated_so_far.fetch_add(1) < kEnumerationTarget;
          if (!enumerate) enumerated_so_far.fetch_sub(1);
          outcomes[idx] = run_differential(cases[idx], enumerate);
          if (enumerate && !outcomes[idx].enumerated) enumerated_so_far.fetch_sub(1);
        }
      });
    }
    for (auto& t : pool) t.join();

    int agreed = 0, enumerated = 0, enumeration_equal = 0;
    for (const auto& out : outcomes) {
      if (out.verdicts_agree) ++agreed;
      if (out.enumerated) ++enumerated;
      if (out.enumeration_equal) ++enumeration_equal;
      if (!out.note.empty()) std::cout << "  note: " << out.note << std::endl;
    }
    const bool pass =
        agreed == kCases && enumerated >= 50 && enumeration_equal == enumerated;
    std::ostringstream msg;
    msg << "differential suite: " << agreed << "/" << kCases << " verdicts agree, "
        << enumeration_equal << "/" << enumerated << " enumeration sets equal";
    report(6, pass, msg.str());
  } catch (const std::exception& e) {
    report(6, false, std::string("exception: ") + e.what());
  }
}

void criterion_7_invariants() {
  std::lock_guard<std::mutex> lock(invariant_mutex);
  std::ostringstream msg;
  msg << "model invariants: " << invariant_violations << " violations across "
      << invariant_models << " decoded models";
  report(7, invariant_models > 0 && invariant_violations == 0, msg.str());
}

// --------------------------------------------------------------------------
// Criterion 8: determinism and quadratic growth.

size_t pipeline_nodes(int consumers) {
  auto prog = parse_or_throw(pipeline_text(consumers));
  auto up = unroll(prog, 1);
  Encoder enc(up);
  size_t nodes = node_count(enc.gen_sched());
  nodes += node_count(neg(enc.gen_property(prog.properties[0])));
  return nodes;
}

std::string serialize_sample(const std::string& name) {
  auto prog = parse_or_throw(read_file(samples_dir() + "/" + name));
  auto up = unroll(prog, 1);
  Encoder enc(up);
  std::vector<Formula> formulas = enc.gen_sched_parts();
  formulas.push_back(neg(enc.gen_property(prog.properties[0])));
  return serialize(formulas, up);
}

void criterion_8_determinism_and_growth() {
  try {
    bool deterministic = true;
    for (const char* name : {"toy.tick", "pipeline_k2.tick"}) {
      deterministic = deterministic && serialize_sample(name) == serialize_sample(name);
    }

    const std::vector<int> family = {2, 3, 5, 10};
    std::vector<double> m, y;
    for (int k : family) {
      double stmts = 0;
      auto up = unroll(parse_or_throw(pipeline_text(k)), 1);
      for (int t = 1; t <= up.thread_count(); ++t) stmts += up.thread(t).size();
      m.push_back(stmts);
      y.push_back(static_cast<double>(pipeline_nodes(k)));
    }

    // Least-squares fit y = a m^2 + b m + c via the normal equations.
    double s[5] = {0, 0, 0, 0, 0}, t0 = 0, t1 = 0, t2 = 0;
    for (size_t i = 0; i < m.size(); ++i) {
      double mi = m[i], yi = y[i];
      double p[5] = {1, mi, mi * mi, mi * mi * mi, mi * mi * mi * mi};
      for (int d = 0; d < 5; ++d) s[d] += p[d];
      t0 += yi;
      t1 += yi * mi;
      t2 += yi * mi * mi;
    }
    const double A[3][3] = {{s[4], s[3], s[2]}, {s[3], s[2], s[1]}, {s[2], s[1], s[0]}};
    const double B[3] = {t2, t1, t0};
    auto det3 = [](const double M[3][3]) {
      return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
             M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
             M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    };
    const double det = det3(A);
    double coef[3];
    for (int c = 0; c < 3; ++c) {
      double M[3][3];
      for (int r = 0; r < 3; ++r) {
        for (int cc = 0; cc < 3; ++cc) M[r][cc] = A[r][cc];
      }
      for (int r = 0; r < 3; ++r) M[r][c] = B[r];
      coef[c] = det3(M) / det;
    }
    double worst = 0;
    for (size_t i = 0; i < m.size(); ++i) {
      const double fit = coef[0] * m[i] * m[i] + coef[1] * m[i] + coef[2];
      worst = std::max(worst, std::abs(fit - y[i]) / y[i]);
    }
    std::ostringstream msg;
    msg << "byte-identical encodings; quadratic fit residual " << std::fixed
        << std::setprecision(3) << worst << " (limit 0.10) over node counts";
    for (size_t i = 0; i < m.size(); ++i) msg << " " << static_cast<size_t>(y[i]);
    report(8, deterministic && worst <= 0.10, msg.str());
  } catch (const std::exception& e) {
    report(8, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  const auto start = Clock::now();
  criterion_1_toy_holds();
  criterion_2_mutated_toy();
  criterion_3_pipeline();
  criterion_4_loops();
  criterion_5_conflict();
  criterion_6_differential();
  criterion_7_invariants();
  criterion_8_determinism_and_growth();
  std::cout << "acceptance total: " << seconds_since(start) << "s, " << failures
            << " failing criteria" << std::endl;
  return failures == 0 ? 0 : 1;
}
