#include "tick/program.hpp"

#include <sstream>

#include "tick/diagnostics.hpp"

namespace tick {

std::string format_diagnostics(const std::vector<Diagnostic>& diags) {
  std::ostringstream out;
  for (const auto& d : diags) {
    out << d.line << ":" << d.column << ": " << d.message << "\n";
  }
  return out.str();
}

Stmt Stmt::ordinary(std::string label, Time duration) {
  Stmt s;
  s.kind = StmtKind::Ordinary;
  s.label = std::move(label);
  s.duration = duration;
  return s;
}

Stmt Stmt::sleep(Time duration) {
  Stmt s;
  s.kind = StmtKind::Sleep;
  s.duration = duration;
  return s;
}

Stmt Stmt::loop(std::vector<Stmt> body) {
  Stmt s;
  s.kind = StmtKind::Loop;
  s.body = std::move(body);
  return s;
}

PropExpr PropExpr::atom(PropRef a, PropRef b) {
  PropExpr e;
  e.kind = Kind::Atom;
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return e;
}

static PropExpr binary(PropExpr::Kind kind, PropExpr a, PropExpr b) {
  PropExpr e;
  e.kind = kind;
  e.args.push_back(std::move(a));
  e.args.push_back(std::move(b));
  return e;
}

PropExpr PropExpr::conj(PropExpr a, PropExpr b) { return binary(Kind::And, std::move(a), std::move(b)); }
PropExpr PropExpr::disj(PropExpr a, PropExpr b) { return binary(Kind::Or, std::move(a), std::move(b)); }
PropExpr PropExpr::implies(PropExpr a, PropExpr b) { return binary(Kind::Implies, std::move(a), std::move(b)); }

PropExpr PropExpr::neg(PropExpr a) {
  PropExpr e;
  e.kind = Kind::Not;
  e.args.push_back(std::move(a));
  return e;
}

const ThreadDef* SourceProgram::find_thread(const std::string& name) const {
  for (const auto& t : threads) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

static void print_ref(std::ostringstream& out, const PropRef& r) {
  out << r.thread << "." << r.label;
  if (r.index == PropRef::Index::I) out << "[i]";
  if (r.index == PropRef::Index::IPlusOne) out << "[i+1]";
}

// Parenthesizes every non-atom child; reparsing is then unambiguous
// regardless of the original precedence.
static void print_expr(std::ostringstream& out, const PropExpr& e) {
  switch (e.kind) {
    case PropExpr::Kind::Atom:
      out << "before(";
      print_ref(out, e.lhs);
      out << ", ";
      print_ref(out, e.rhs);
      out << ")";
      return;
    case PropExpr::Kind::Not:
      out << "not (";
      print_expr(out, e.args[0]);
      out << ")";
      return;
    case PropExpr::Kind::And:
    case PropExpr::Kind::Or:
    case PropExpr::Kind::Implies: {
      const char* op = e.kind == PropExpr::Kind::And   ? " and "
                       : e.kind == PropExpr::Kind::Or  ? " or "
                                                       : " -> ";
      out << "(";
      print_expr(out, e.args[0]);
      out << op;
      print_expr(out, e.args[1]);
      out << ")";
      return;
    }
  }
}

std::string pretty_print(const PropExpr& expr) {
  std::ostringstream out;
  print_expr(out, expr);
  return out.str();
}

static void print_stmts(std::ostringstream& out, const std::vector<Stmt>& stmts,
                        const std::string& indent) {
  for (const auto& s : stmts) {
    switch (s.kind) {
      case StmtKind::Ordinary:
        out << indent << "stmt " << s.label << " dur " << s.duration << ";\n";
        break;
      case StmtKind::Sleep:
        out << indent << "sleep " << s.duration << ";\n";
        break;
      case StmtKind::Loop:
        out << indent << "loop {\n";
        print_stmts(out, s.body, indent + "  ");
        out << indent << "}\n";
        break;
    }
  }
}

std::string pretty_print(const SourceProgram& program) {
  std::ostringstream out;
  for (const auto& t : program.threads) {
    out << "thread " << t.name << " {\n";
    print_stmts(out, t.stmts, "  ");
    out << "}\n";
  }
  for (const auto& p : program.properties) {
    out << "property " << p.name << " { " << pretty_print(p.expr) << " }\n";
  }
  return out.str();
}

}  // namespace tick
