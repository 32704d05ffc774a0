// acdlv -- bounded safety checking with conflict-driven abstract learning.
// SPDX-License-Identifier: MIT
//
// Concrete-semantics oracle.  Everything here is deliberately naive: exact
// two's-complement evaluation, exhaustive enumeration, straight-line
// interpretation.  The solver is tested against these, never the other way
// round.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "acdl/program.h"
#include "acdl/ssa.h"

namespace acdl {

// Total concrete assignment, indexed by SSA variable id; booleans are 0/1.
using ConcreteMap = std::vector<Bound>;

// Wraps v into the two's-complement (or unsigned) range of the given width.
Bound wrap_width(Bound v, int width, bool is_signed);

// Evaluates an expression under a total assignment, wrapping at every
// numeric operator.  Boolean results are 0/1.
Bound eval_concrete(const ExprPtr& e, const ConcreteMap& u);

// True iff u satisfies every constraint of the set.
bool satisfies(const SsaProgram& ssa, const ConcreteMap& u);

// Evaluates all defined variables bottom-up from the free ones (definitions
// are emitted before their uses).  Entries for free variables must be set.
void eval_defined(const SsaProgram& ssa, ConcreteMap& u);

struct BruteResult {
  bool unsafe = false;          // some model of the constraint set exists
  ConcreteMap witness;          // a model, when unsafe
  uint64_t states_checked = 0;
};

// Exhaustively enumerates the free (undefined) variables in declaration
// order, evaluating defined variables functionally.  Throws std::runtime_error
// if the state space exceeds `cap` (default 2^24).
BruteResult brute_force_verdict(const SsaProgram& ssa,
                                uint64_t cap = uint64_t(1) << 24);

// Checks a partial model: free variables missing from `partial` are set to
// their smallest value, defined variables are recomputed, then all
// constraints are checked.  Values given in `partial` win for free variables;
// for defined variables they are verified against the recomputed value.
// Returns the completed model iff everything holds.
std::optional<ConcreteMap> replay_witness(
    const SsaProgram& ssa, const std::vector<std::pair<int, Bound>>& partial);

// Runs a loop-free surface program on initial values `init` (indexed by
// declaration).  Returns true iff execution reaches a failing assert; a
// failing assume stops execution without a violation.
bool run_concrete(const Program& p, const std::vector<Bound>& init);

}  // namespace acdl
