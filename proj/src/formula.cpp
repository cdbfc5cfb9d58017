#include "tick/formula.hpp"

#include <sstream>

namespace tick {

std::string var_name(const SVar& v) {
  switch (v.kind) {
    case SVar::Kind::PC: return "pc_" + std::to_string(v.t) + "_" + std::to_string(v.k);
    case SVar::Kind::Y: return "Y_" + std::to_string(v.k);
    case SVar::Kind::X: return "X_" + std::to_string(v.k);
    case SVar::Kind::E: return "E_" + std::to_string(v.t) + "_" + std::to_string(v.i);
  }
  return "?";
}

Term cnum(Time v) {
  Term t;
  t.kind = Term::Kind::Const;
  t.value = v;
  return t;
}

Term tvar(SVar v) {
  Term t;
  t.kind = Term::Kind::Var;
  t.var = v;
  return t;
}

Term pc(int t, int k) { return tvar({SVar::Kind::PC, t, k, 0}); }
Term yvar(int k) { return tvar({SVar::Kind::Y, 0, k, 0}); }
Term xvar(int k) { return tvar({SVar::Kind::X, 0, k, 0}); }
Term evar(int t, int i) { return tvar({SVar::Kind::E, t, 0, i}); }

Term dur(int t, int i) {
  Term d;
  d.kind = Term::Kind::Dur;
  d.dt = t;
  d.di = i;
  return d;
}

Term sum(Term a, Term b) {
  Term s;
  s.kind = Term::Kind::Sum;
  s.terms.push_back(std::move(a));
  s.terms.push_back(std::move(b));
  return s;
}

Formula cmp(CmpOp op, Term lhs, Term rhs) {
  Formula f;
  f.kind = Formula::Kind::Compare;
  f.op = op;
  f.lhs = std::move(lhs);
  f.rhs = std::move(rhs);
  return f;
}

Formula eq(Term lhs, Term rhs) { return cmp(CmpOp::Eq, std::move(lhs), std::move(rhs)); }
Formula ne(Term lhs, Term rhs) { return cmp(CmpOp::Ne, std::move(lhs), std::move(rhs)); }
Formula lt(Term lhs, Term rhs) { return cmp(CmpOp::Lt, std::move(lhs), std::move(rhs)); }
Formula le(Term lhs, Term rhs) { return cmp(CmpOp::Le, std::move(lhs), std::move(rhs)); }
Formula gt(Term lhs, Term rhs) { return cmp(CmpOp::Gt, std::move(lhs), std::move(rhs)); }

static Formula boolean(bool b) {
  Formula f;
  f.kind = b ? Formula::Kind::True : Formula::Kind::False;
  return f;
}

Formula conj(std::vector<Formula> fs) {
  if (fs.empty()) return boolean(true);
  if (fs.size() == 1) return std::move(fs.front());
  Formula f;
  f.kind = Formula::Kind::And;
  f.args = std::move(fs);
  return f;
}

Formula disj(std::vector<Formula> fs) {
  if (fs.empty()) return boolean(false);
  if (fs.size() == 1) return std::move(fs.front());
  Formula f;
  f.kind = Formula::Kind::Or;
  f.args = std::move(fs);
  return f;
}

Formula neg(Formula f) {
  Formula n;
  n.kind = Formula::Kind::Not;
  n.args.push_back(std::move(f));
  return n;
}

Formula implies(Formula a, Formula b) {
  Formula f;
  f.kind = Formula::Kind::Implies;
  f.args.push_back(std::move(a));
  f.args.push_back(std::move(b));
  return f;
}

std::size_t node_count(const Term& t) {
  std::size_t n = 1;
  for (const auto& s : t.terms) n += node_count(s);
  return n;
}

std::size_t node_count(const Formula& f) {
  std::size_t n = 1;
  if (f.kind == Formula::Kind::Compare) {
    n += node_count(f.lhs) + node_count(f.rhs);
  }
  for (const auto& a : f.args) n += node_count(a);
  return n;
}

static const char* cmp_symbol(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "distinct";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
  }
  return "?";
}

static void print_term(std::ostringstream& out, const Term& t) {
  switch (t.kind) {
    case Term::Kind::Const:
      if (t.value < 0) {
        out << "(- " << -t.value << ")";
      } else {
        out << t.value;
      }
      return;
    case Term::Kind::Var:
      out << var_name(t.var);
      return;
    case Term::Kind::Dur:
      out << "D_" << t.dt << "_" << t.di;
      return;
    case Term::Kind::Sum:
      out << "(+";
      for (const auto& s : t.terms) {
        out << " ";
        print_term(out, s);
      }
      out << ")";
      return;
  }
}

static void print_formula(std::ostringstream& out, const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::True:
      out << "true";
      return;
    case Formula::Kind::False:
      out << "false";
      return;
    case Formula::Kind::Compare:
      out << "(" << cmp_symbol(f.op) << " ";
      print_term(out, f.lhs);
      out << " ";
      print_term(out, f.rhs);
      out << ")";
      return;
    case Formula::Kind::Not:
      out << "(not ";
      print_formula(out, f.args[0]);
      out << ")";
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      out << "(" << (f.kind == Formula::Kind::And  ? "and"
                     : f.kind == Formula::Kind::Or ? "or"
                                                   : "=>");
      for (const auto& a : f.args) {
        out << " ";
        print_formula(out, a);
      }
      out << ")";
      return;
  }
}

std::string to_sexpr(const Term& t) {
  std::ostringstream out;
  print_term(out, t);
  return out.str();
}

std::string to_sexpr(const Formula& f) {
  std::ostringstream out;
  print_formula(out, f);
  return out.str();
}

namespace {

std::string check_var(const SVar& v, const UnrolledProgram& up) {
  const int T = up.thread_count();
  const int N = up.rounds;
  switch (v.kind) {
    case SVar::Kind::PC:
      if (v.t < 1 || v.t > T || v.k < 1 || v.k > N + 1) return var_name(v);
      return "";
    case SVar::Kind::Y:
    case SVar::Kind::X:
      if (v.k < 1 || v.k > N + 1) return var_name(v);
      return "";
    case SVar::Kind::E:
      if (v.t < 1 || v.t > T || v.i < 1 || v.i > up.thread(v.t).size()) return var_name(v);
      return "";
  }
  return var_name(v);
}

std::string check_term(const Term& t, const UnrolledProgram& up) {
  switch (t.kind) {
    case Term::Kind::Const:
      return "";
    case Term::Kind::Var:
      return check_var(t.var, up);
    case Term::Kind::Dur:
      if (t.dt < 1 || t.dt > up.thread_count() || t.di < 1 ||
          t.di > up.thread(t.dt).size()) {
        return "D_" + std::to_string(t.dt) + "_" + std::to_string(t.di);
      }
      return "";
    case Term::Kind::Sum:
      for (const auto& s : t.terms) {
        if (auto bad = check_term(s, up); !bad.empty()) return bad;
      }
      return "";
  }
  return "?";
}

}  // namespace

std::string check_well_formed(const Formula& f, const UnrolledProgram& up) {
  if (f.kind == Formula::Kind::Compare) {
    if (auto bad = check_term(f.lhs, up); !bad.empty()) return bad;
    if (auto bad = check_term(f.rhs, up); !bad.empty()) return bad;
  }
  for (const auto& a : f.args) {
    if (auto bad = check_well_formed(a, up); !bad.empty()) return bad;
  }
  return "";
}

}  // namespace tick
