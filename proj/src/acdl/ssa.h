// acdlv -- bounded safety checking with conflict-driven abstract learning.
// SPDX-License-Identifier: MIT
//
// SSA constraint form.  A program becomes a conjunction of constraints
//   - definitions      name#k = expr        (assignments, cond/guard defs)
//   - phi definitions  name#phiK = g ? a : b
//   - the negated assertion (reachability guard AND negated condition)
// whose models are exactly the concrete executions that reach an assertion
// violation.  Safety of the unrolled program == unsatisfiability of the set.

#pragma once

#include <string>
#include <vector>

#include "acdl/expr.h"
#include "acdl/program.h"

namespace acdl {

enum class ConstraintKind {
  kDefinition,  // defined_var = rhs (numeric Eq or boolean BEq root)
  kPhi,         // defined_var = selector ? a : b
  kClause,      // plain constraint that must hold (s-expression input)
  kNegAssert,   // conjunction of guard and negated assertion condition
};

struct Constraint {
  int id = -1;
  ConstraintKind kind = ConstraintKind::kClause;
  ExprPtr root;          // boolean tree; the constraint asserts root == true
  int defined_var = -1;  // kDefinition / kPhi
  std::vector<int> vars; // distinct variables, first-occurrence order
};

struct SsaProgram {
  VarTable vars;
  std::vector<Constraint> constraints;
  int entry_guard = -1;  // var id of guard#0, -1 if absent (s-expression input)

  // SSA ids of the initial version of each surface declaration, in
  // declaration order (empty for s-expression input).
  std::vector<int> input_vars;
};

// Translates a loop-free program (run unroll() first).  Deterministic:
// identical input text yields identical names and constraint ids.
SsaProgram to_ssa(const Program& p);

// One constraint per line, `name = rhs` for definitions.
std::string print_ssa(const SsaProgram& ssa);

// Pre-encoded constraint files, one form per line:
//   ; comment
//   (var <name> (int W) | (uint W) | bool)
//   (def <name> <expr>)     defining constraint  <name> = <expr>
//   (clause <expr>)         plain constraint
//   (neg-assert <expr>)     negated assertion
// Expressions: (+ a b) (- a b) (neg a) (* a b) (and ...) (or ...) (not a)
//              (= a b) (!= a b) (< a b) (<= a b) (> a b) (>= a b)
//              (ite c a b), integers, names, true, false.
SsaProgram parse_ssa_sexpr(const std::string& text);

}  // namespace acdl
