#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tick/program.hpp"
#include "tick/unroll.hpp"

namespace tick {

// Schedule variable. PC(t,k) is the program counter of thread t at round k,
// Y(k)/X(k) the global start/end time of round k, E(t,i) the ending time of
// statement i of thread t. t, i, k are 1-based.
struct SVar {
  enum class Kind { PC, Y, X, E };
  Kind kind = Kind::PC;
  int t = 0;
  int k = 0;
  int i = 0;

  bool operator==(const SVar&) const = default;
};

std::string var_name(const SVar& v);

enum class CmpOp { Eq, Ne, Lt, Le, Ge, Gt };

// Linear integer term: constant, schedule variable, named duration
// constant D(t,i), or a sum of terms.
struct Term {
  enum class Kind { Const, Var, Dur, Sum };
  Kind kind = Kind::Const;
  Time value = 0;           // Const
  SVar var;                 // Var
  int dt = 0, di = 0;       // Dur
  std::vector<Term> terms;  // Sum

  bool operator==(const Term&) const = default;
};

struct Formula {
  enum class Kind { Compare, And, Or, Not, Implies, True, False };
  Kind kind = Kind::True;
  CmpOp op = CmpOp::Eq;
  Term lhs, rhs;              // Compare
  std::vector<Formula> args;  // connectives

  bool operator==(const Formula&) const = default;
};

// Term builders.
Term cnum(Time v);
Term tvar(SVar v);
Term pc(int t, int k);
Term yvar(int k);
Term xvar(int k);
Term evar(int t, int i);
Term dur(int t, int i);
Term sum(Term a, Term b);

// Formula builders. conj/disj of an empty list yield True/False; a single
// element collapses to itself.
Formula cmp(CmpOp op, Term lhs, Term rhs);
Formula eq(Term lhs, Term rhs);
Formula ne(Term lhs, Term rhs);
Formula lt(Term lhs, Term rhs);
Formula le(Term lhs, Term rhs);
Formula gt(Term lhs, Term rhs);
Formula conj(std::vector<Formula> fs);
Formula disj(std::vector<Formula> fs);
Formula neg(Formula f);
Formula implies(Formula a, Formula b);

// Number of AST nodes (terms and formulas both counted).
std::size_t node_count(const Term& t);
std::size_t node_count(const Formula& f);

// S-expression rendering, identical to the serialized SMT form of the
// formula body.
std::string to_sexpr(const Term& t);
std::string to_sexpr(const Formula& f);

// Checks that every variable reference is well-formed for the given
// program and bound: PC(t,k)/Y(k)/X(k) with 1 <= k <= N+1, E(t,i) and
// D(t,i) with 1 <= i <= n_t. Returns a description of the first offending
// variable, or an empty string.
std::string check_well_formed(const Formula& f, const UnrolledProgram& up);

}  // namespace tick
