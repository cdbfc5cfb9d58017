#include "tick/encode.hpp"

#include <algorithm>
#include <stdexcept>

namespace tick {

// ---------------------------------------------------------------------------
// Property instantiation

namespace {

std::string ref_display(const std::string& thread, const std::string& label, int iteration) {
  std::string s = thread + "." + label;
  if (iteration > 0) s += "[" + std::to_string(iteration) + "]";
  return s;
}

struct RefResolver {
  const UnrolledProgram& up;
  int iteration;  // value of the symbolic index; 0 when unused
  std::string missing;  // first unresolvable reference, if any

  ResolvedRef resolve(const PropRef& ref) {
    ResolvedRef out;
    const int t = up.thread_index(ref.thread);
    if (t == 0) {
      missing = ref.thread + "." + ref.label;
      return out;
    }
    int iter = 0;
    if (ref.index == PropRef::Index::I) iter = iteration;
    if (ref.index == PropRef::Index::IPlusOne) iter = iteration + 1;
    const int pos = up.thread(t).position_of(ref.label, iter);
    if (pos == 0) {
      missing = ref_display(ref.thread, ref.label, iter);
      return out;
    }
    out.thread = t;
    out.pos = pos;
    out.display = ref_display(ref.thread, ref.label, iter);
    return out;
  }

  ResolvedExpr resolve(const PropExpr& e) {
    ResolvedExpr out;
    out.kind = e.kind;
    if (e.kind == PropExpr::Kind::Atom) {
      out.lhs = resolve(e.lhs);
      out.rhs = resolve(e.rhs);
      return out;
    }
    for (const auto& a : e.args) out.args.push_back(resolve(a));
    return out;
  }
};

bool uses_symbolic_index(const PropExpr& e) {
  if (e.kind == PropExpr::Kind::Atom) {
    return e.lhs.index != PropRef::Index::None || e.rhs.index != PropRef::Index::None;
  }
  return std::any_of(e.args.begin(), e.args.end(), uses_symbolic_index);
}

void collect_refs(const ResolvedExpr& e, std::vector<ResolvedRef>& out) {
  if (e.kind == PropExpr::Kind::Atom) {
    for (const auto& r : {e.lhs, e.rhs}) {
      if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    }
    return;
  }
  for (const auto& a : e.args) collect_refs(a, out);
}

}  // namespace

std::vector<PropertyInstance> instantiate_property(const UnrolledProgram& up,
                                                   const Property& prop) {
  std::vector<PropertyInstance> out;
  const bool symbolic = uses_symbolic_index(prop.expr);
  const int lo = symbolic ? 1 : 0;
  const int hi = symbolic ? up.loop_iterations : 0;
  std::string first_missing;
  for (int iter = lo; iter <= hi; ++iter) {
    RefResolver resolver{up, iter, ""};
    ResolvedExpr expr = resolver.resolve(prop.expr);
    if (!resolver.missing.empty()) {
      if (first_missing.empty()) first_missing = resolver.missing;
      continue;  // valuation left a reference without an instance
    }
    PropertyInstance inst;
    inst.property = prop.name;
    inst.iteration = iter;
    inst.expr = std::move(expr);
    collect_refs(inst.expr, inst.refs);
    inst.display = prop.name + (iter > 0 ? "[i=" + std::to_string(iter) + "]" : "");
    out.push_back(std::move(inst));
  }
  if (out.empty()) {
    throw UnreachableUnderBound(
        "property '" + prop.name + "': statement " + first_missing +
        " is unreachable under the bound (not present in the unrolled program)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constraint generation

Formula Encoder::gen_init() const {
  const int T = up_.thread_count();
  std::vector<Formula> parts;

  bool any_ordinary_start = false;
  for (int t = 1; t <= T; ++t) {
    const bool ordinary_first = up_.thread(t).is_ordinary(1);
    any_ordinary_start |= ordinary_first;
    parts.push_back(eq(pc(t, 1), cnum(ordinary_first ? 1 : 2)));
  }

  if (any_ordinary_start) {
    parts.push_back(eq(yvar(1), cnum(0)));
  } else {
    // Round 1 starts when the shortest initial sleep ends: pick some
    // thread whose first sleep is minimal among all of them.
    std::vector<Formula> choices;
    for (int t = 1; t <= T; ++t) {
      std::vector<Formula> c;
      for (int tp = 1; tp <= T; ++tp) {
        if (tp == t) continue;
        c.push_back(le(dur(t, 1), dur(tp, 1)));
      }
      c.push_back(eq(yvar(1), dur(t, 1)));
      choices.push_back(conj(std::move(c)));
    }
    parts.push_back(disj(std::move(choices)));
  }

  for (int t = 1; t <= T; ++t) {
    if (!up_.thread(t).is_ordinary(1)) {
      parts.push_back(eq(evar(t, 1), dur(t, 1)));
    }
  }
  return conj(std::move(parts));
}

Formula Encoder::gen_exec(int t, int i, int k) const {
  const auto& th = up_.thread(t);
  if (i < 1 || i > th.size() || !th.is_ordinary(i)) {
    throw std::invalid_argument("gen_exec: statement " + std::to_string(i) +
                                " of thread " + std::to_string(t) + " is not ordinary");
  }
  const int n = th.size();
  const bool sleep_follows = i + 1 <= n && th.stmt(i + 1).kind == UKind::Sleep;

  std::vector<Formula> parts;
  parts.push_back(eq(pc(t, k), cnum(i)));
  parts.push_back(eq(xvar(k), sum(yvar(k), dur(t, i))));
  parts.push_back(eq(evar(t, i), xvar(k)));
  if (sleep_follows) {
    parts.push_back(eq(evar(t, i + 1), sum(xvar(k), dur(t, i + 1))));
    parts.push_back(eq(pc(t, k + 1), cnum(i + 2)));
  } else {
    parts.push_back(eq(pc(t, k + 1), cnum(i + 1)));
  }
  for (int tp = 1; tp <= up_.thread_count(); ++tp) {
    if (tp == t) continue;
    parts.push_back(eq(pc(tp, k + 1), pc(tp, k)));
  }
  return conj(std::move(parts));
}

Formula Encoder::eprev_cmp(int t, int k, CmpOp op, const Term& rhs) const {
  std::vector<Formula> parts;
  const int n = up_.thread(t).size();
  for (int i = 1; i <= n; ++i) {
    parts.push_back(conj({eq(pc(t, k), cnum(i + 1)), cmp(op, evar(t, i), rhs)}));
  }
  return disj(std::move(parts));
}

Formula Encoder::cmp_eprev(const Term& lhs, CmpOp op, int t, int k) const {
  std::vector<Formula> parts;
  const int n = up_.thread(t).size();
  for (int i = 1; i <= n; ++i) {
    parts.push_back(conj({eq(pc(t, k), cnum(i + 1)), cmp(op, lhs, evar(t, i))}));
  }
  return disj(std::move(parts));
}

Formula Encoder::eprev_le_eprev(int t, int tp, int k) const {
  std::vector<Formula> parts;
  const int n = up_.thread(t).size();
  for (int i = 1; i <= n; ++i) {
    parts.push_back(conj({eq(pc(t, k), cnum(i + 1)), cmp_eprev(evar(t, i), CmpOp::Le, tp, k)}));
  }
  return disj(std::move(parts));
}

Formula Encoder::gen_terminated(int k) const {
  std::vector<Formula> parts;
  for (int t = 1; t <= up_.thread_count(); ++t) {
    const int n = up_.thread(t).size();
    parts.push_back(eq(pc(t, k), cnum(n + 1)));
    parts.push_back(eq(pc(t, k + 1), cnum(n + 1)));
  }
  parts.push_back(eq(yvar(k + 1), xvar(k)));
  parts.push_back(eq(xvar(k + 1), xvar(k)));
  return conj(std::move(parts));
}

Formula Encoder::gen_some_executable(int k) const {
  std::vector<Formula> parts;
  for (int t = 1; t <= up_.thread_count(); ++t) {
    const int n = up_.thread(t).size();
    parts.push_back(conj({ne(pc(t, k + 1), cnum(n + 1)),
                          disj({eq(pc(t, k + 1), cnum(1)),
                                eprev_cmp(t, k + 1, CmpOp::Le, xvar(k))})}));
  }
  return disj(std::move(parts));
}

Formula Encoder::gen_set_min_end_time(int k) const {
  const int T = up_.thread_count();
  std::vector<Formula> choices;
  for (int t = 1; t <= T; ++t) {
    std::vector<Formula> c;
    c.push_back(ne(pc(t, k + 1), cnum(up_.thread(t).size() + 1)));
    for (int tp = 1; tp <= T; ++tp) {
      if (tp == t) continue;
      c.push_back(implies(ne(pc(tp, k + 1), cnum(up_.thread(tp).size() + 1)),
                          eprev_le_eprev(t, tp, k + 1)));
    }
    c.push_back(cmp_eprev(yvar(k + 1), CmpOp::Eq, t, k + 1));
    choices.push_back(conj(std::move(c)));
  }
  return disj(std::move(choices));
}

Formula Encoder::all_terminated_at(int k) const {
  std::vector<Formula> parts;
  for (int t = 1; t <= up_.thread_count(); ++t) {
    parts.push_back(eq(pc(t, k), cnum(up_.thread(t).size() + 1)));
  }
  return conj(std::move(parts));
}

Formula Encoder::gen_round(int k) const {
  // Execution disjunction with the availability guard on the preceding
  // statement's ending time.
  std::vector<Formula> execs;
  for (int t = 1; t <= up_.thread_count(); ++t) {
    for (int i : up_.thread(t).ns_indices) {
      Formula e = gen_exec(t, i, k);
      if (i == 1) {
        execs.push_back(std::move(e));
      } else {
        execs.push_back(conj({std::move(e), le(evar(t, i - 1), yvar(k))}));
      }
    }
  }

  // Start of round k+1: the end of round k when someone is executable
  // then, the earliest wake time when every live thread sleeps, or a time
  // freeze once every thread has terminated during round k.
  Formula fix = disj({conj({gen_some_executable(k), eq(yvar(k + 1), xvar(k))}),
                      conj({neg(gen_some_executable(k)), gen_set_min_end_time(k)}),
                      conj({all_terminated_at(k + 1), eq(yvar(k + 1), xvar(k)),
                            eq(xvar(k + 1), xvar(k))})});

  Formula exec_thread = conj({disj(std::move(execs)), std::move(fix)});
  return disj({gen_terminated(k), std::move(exec_thread)});
}

std::vector<Formula> Encoder::gen_sched_parts() const {
  std::vector<Formula> parts;
  parts.push_back(gen_init());
  for (int k = 1; k <= N_; ++k) parts.push_back(gen_round(k));
  return parts;
}

Formula Encoder::gen_sched() const { return conj(gen_sched_parts()); }

Formula Encoder::gen_property(const std::vector<PropertyInstance>& instances) const {
  std::vector<Formula> conjuncts;
  for (const auto& inst : instances) {
    std::vector<Formula> guards;
    for (const auto& r : inst.refs) {
      guards.push_back(gt(pc(r.thread, N_ + 1), cnum(r.pos)));
    }
    // Body: the instantiated combination over ending-time atoms.
    struct Builder {
      Formula build(const ResolvedExpr& e) const {
        switch (e.kind) {
          case PropExpr::Kind::Atom:
            return lt(evar(e.lhs.thread, e.lhs.pos), evar(e.rhs.thread, e.rhs.pos));
          case PropExpr::Kind::Not:
            return neg(build(e.args[0]));
          case PropExpr::Kind::And: {
            std::vector<Formula> fs;
            for (const auto& a : e.args) fs.push_back(build(a));
            return conj(std::move(fs));
          }
          case PropExpr::Kind::Or: {
            std::vector<Formula> fs;
            for (const auto& a : e.args) fs.push_back(build(a));
            return disj(std::move(fs));
          }
          case PropExpr::Kind::Implies:
            return implies(build(e.args[0]), build(e.args[1]));
        }
        return Formula{};
      }
    };
    conjuncts.push_back(implies(conj(std::move(guards)), Builder{}.build(inst.expr)));
  }
  return conj(std::move(conjuncts));
}

Formula Encoder::gen_property(const Property& prop) const {
  return gen_property(instantiate_property(up_, prop));
}

}  // namespace tick
