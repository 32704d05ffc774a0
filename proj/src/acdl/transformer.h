// acdlv -- bounded safety checking with conflict-driven abstract learning.
// SPDX-License-Identifier: MIT
//
// Abstract transformers: one per constraint, plus the unit rule for learnt
// cuts.  Applying a transformer tightens the abstract value inside a
// restricted subdomain and reports every new meet irreducible together with
// the trail entries whose bounds were consulted to derive it, so conflict
// analysis can resolve deductions backwards.
//
// Numeric reasoning is interval arithmetic with three refinements:
//   * linear (sub)expressions are compared against template rows, preferring
//     a matching relational row over an equal combination of variable bounds;
//   * an equality between a variable and a same-variable product is evaluated
//     as an exact integer quadratic on the rows pairing the two variables;
//   * disjunctions (and phi selections) whose branches are undecided are
//     evaluated branch-locally and joined row-wise.
// Any node whose mathematical range escapes its width contributes only its
// width box, and nothing is pushed backwards through it: wrap-around makes
// the algebraic rewrites unsound, so such nodes deduce nothing.

#pragma once

#include <vector>

#include "acdl/domain.h"
#include "acdl/ssa.h"

namespace acdl {

// Sorted duplicate-free set of trail indices: the bounds a deduction used.
using SrcSet = std::vector<int>;
SrcSet merge_srcs(const SrcSet& a, const SrcSet& b);

// Which rows / booleans a transformer application may deposit into.
// Deductions outside the subdomain are discarded.
struct Subdomain {
  std::vector<char> rows;   // by row id
  std::vector<char> bools;  // by variable id
};

enum class Strategy { kForward, kBackward, kMultiway };

// The variables a strategy focuses a constraint's deductions on: the defined
// variable (forward), the right-hand-side variables (backward), or all of
// them (multiway; also the fallback for constraints that define nothing).
std::vector<int> strategy_vars(const Constraint& c, Strategy s);

// Subdomain enabling every row that mentions a focus variable, plus the
// focus booleans.
Subdomain make_subdomain(const Template& tpl, const VarTable& vt,
                         const std::vector<int>& focus);

// The solver's view of who owns a stored bound: the trail index whose
// deduction put it there, or -1 for width-implied / initial bounds.
class BoundOwners {
 public:
  virtual ~BoundOwners() = default;
  virtual int row_owner(int row) const = 0;
  virtual int bool_owner(int bvar) const = 0;
};

struct Deduction {
  MeetIrreducible m;
  SrcSet srcs;               // trail indices this deduction depends on
  Bound prev_raw = kPosInf;  // numeric only: stored bound before (for undo)
};

struct ApplyResult {
  bool conflict = false;
  SrcSet conflict_srcs;
  // Already applied to the abstract value, in order.  On conflict the list
  // holds the deductions made before the contradiction; the caller must
  // still record them to be able to undo.
  std::vector<Deduction> deduced;
};

// Applies the abstract transformer of c to a (in place), restricted to L.
// owners may be null (bounds then carry no provenance).
ApplyResult apply_adt(const Constraint& c, AbstractValue& a, const Subdomain& L,
                      const BoundOwners* owners);

// Unit rule for a learnt cut (a conjunction refuted by conflict analysis):
// all members entailed -> conflict; exactly one not entailed -> its
// complement is deduced; otherwise nothing.
ApplyResult aunit_apply(const std::vector<MeetIrreducible>& cut,
                        AbstractValue& a, const Subdomain& L,
                        const BoundOwners* owners);

// True when a already decides c (its root evaluates to true three-valued):
// the constraint can contribute nothing further.
bool is_vacuous(const Constraint& c, const AbstractValue& a);

// Variables whose remaining freedom can still change whether c holds.
// Sub-expressions already decided under a contribute none.
std::vector<int> live_vars(const Constraint& c, const AbstractValue& a);

}  // namespace acdl
