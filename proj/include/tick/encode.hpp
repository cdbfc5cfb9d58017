#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tick/formula.hpp"
#include "tick/program.hpp"
#include "tick/unroll.hpp"

namespace tick {

// One universal instantiation of a property: every symbolic index replaced
// by a concrete iteration, every reference resolved to an unrolled
// position.
struct ResolvedRef {
  int thread = 0;  // 1-based
  int pos = 0;     // 1-based unrolled position
  std::string display;

  bool operator==(const ResolvedRef&) const = default;
};

struct ResolvedExpr {
  PropExpr::Kind kind = PropExpr::Kind::Atom;
  ResolvedRef lhs, rhs;
  std::vector<ResolvedExpr> args;
};

struct PropertyInstance {
  std::string property;
  int iteration = 0;  // 0 when the property has no symbolic index
  std::vector<ResolvedRef> refs;  // deduplicated, in first-use order
  ResolvedExpr expr;
  std::string display;
};

// Thrown when a property references a statement that exists in the source
// but not in the unrolled program (truncated by the bound), or when no
// iteration valuation leaves all references resolvable.
struct UnreachableUnderBound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Expands the implicit universal quantifier of `prop` over all iteration
// valuations for which every referenced instance exists.
std::vector<PropertyInstance> instantiate_property(const UnrolledProgram& up,
                                                   const Property& prop);

// Generator for the QF_LIA schedule constraints. Every operation is a pure
// function of the unrolled program; `rounds` is N.
class Encoder {
 public:
  explicit Encoder(const UnrolledProgram& up) : up_(up), N_(up.rounds) {}

  int rounds() const { return N_; }

  // init: pins round-1 program counters, the start time of round 1 (zero,
  // or the minimum initial sleep duration when every thread starts
  // sleeping), and the ending times of initial sleeps.
  Formula gen_init() const;

  // exec_{t,i}^(k) for i in NS_t; the variant with the follow-up sleep is
  // chosen from the program shape.
  Formula gen_exec(int t, int i, int k) const;

  // E_prev macro: ending time of the statement preceding the current one
  // of thread t at round k, compared against an arbitrary term.
  Formula eprev_cmp(int t, int k, CmpOp op, const Term& rhs) const;
  Formula cmp_eprev(const Term& lhs, CmpOp op, int t, int k) const;
  // Nested expansion of E_prev_t <= E_prev_t'.
  Formula eprev_le_eprev(int t, int tp, int k) const;

  Formula gen_terminated(int k) const;
  Formula gen_some_executable(int k) const;
  Formula gen_set_min_end_time(int k) const;
  Formula gen_round(int k) const;

  // init /\ round^(1) /\ ... /\ round^(N), as the list of conjuncts.
  std::vector<Formula> gen_sched_parts() const;
  Formula gen_sched() const;

  // lambda for one property: the conjunction over instantiations of
  // (all referenced statements scheduled) => instantiated combination.
  Formula gen_property(const Property& prop) const;
  Formula gen_property(const std::vector<PropertyInstance>& instances) const;

 private:
  Formula all_terminated_at(int k) const;
  const UnrolledProgram& up_;
  int N_;
};

}  // namespace tick
