#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tick {

using Time = std::int64_t;

enum class StmtKind { Ordinary, Sleep, Loop };

// One statement of the source language. Ordinary statements carry a label
// and a positive duration, sleeps a positive duration, loops a body of
// non-loop statements.
struct Stmt {
  StmtKind kind = StmtKind::Ordinary;
  std::string label;        // Ordinary only; may be empty for generated code
  Time duration = 0;        // Ordinary and Sleep; always >= 1
  std::vector<Stmt> body;   // Loop only

  static Stmt ordinary(std::string label, Time duration);
  static Stmt sleep(Time duration);
  static Stmt loop(std::vector<Stmt> body);
};

struct ThreadDef {
  std::string name;
  std::vector<Stmt> stmts;
};

// Reference to a labeled statement inside a property. Statements inside a
// loop are addressed per iteration with the symbolic index `i` or `i+1`.
struct PropRef {
  enum class Index { None, I, IPlusOne };
  std::string thread;
  std::string label;
  Index index = Index::None;

  bool operator==(const PropRef&) const = default;
};

// Boolean combination of ends-before atoms. An atom EndsBefore(a, b)
// asserts that statement a finishes strictly before statement b.
struct PropExpr {
  enum class Kind { Atom, And, Or, Not, Implies };
  Kind kind = Kind::Atom;
  PropRef lhs, rhs;             // Atom
  std::vector<PropExpr> args;   // Not: 1; And/Or/Implies: 2

  static PropExpr atom(PropRef a, PropRef b);
  static PropExpr conj(PropExpr a, PropExpr b);
  static PropExpr disj(PropExpr a, PropExpr b);
  static PropExpr neg(PropExpr a);
  static PropExpr implies(PropExpr a, PropExpr b);
};

struct Property {
  std::string name;
  PropExpr expr;
};

struct SourceProgram {
  std::vector<ThreadDef> threads;
  std::vector<Property> properties;

  const ThreadDef* find_thread(const std::string& name) const;
};

// Canonical text form; parsing the result yields a structurally identical
// program (round-trip tested).
std::string pretty_print(const SourceProgram& program);
std::string pretty_print(const PropExpr& expr);

}  // namespace tick
