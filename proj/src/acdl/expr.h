// acdlv -- bounded safety checking with conflict-driven abstract learning.
// SPDX-License-Identifier: MIT
//
// Shared expression IR.  Both the surface language and the SSA constraint
// form use the same tree; SSA constraints are boolean-rooted trees that must
// evaluate to true.  Numeric nodes carry a declared width (1..32 bits) and
// signedness; concrete semantics wrap two's-complement at every operator.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "acdl/ints.h"

namespace acdl {

//=============================================================================
// Variables
//=============================================================================

// Role a variable plays in the SSA form; drives decision ordering and the
// don't-care analysis.  Surface-level variables are Input until assigned.
enum class VarRole {
  kInput,       // initial version of a declared variable (unconstrained)
  kAssigned,    // left-hand side of an assignment
  kPhi,         // join of two branch versions
  kBranchCond,  // cond#k for an if-statement condition
  kAssumeCond,  // cond#k for an assume condition
  kMarkerCond,  // cond#k := true emitted at the end of a then-branch
  kGuard,       // guard#k (reachability of a location); guard#0 is free
};

struct VarInfo {
  std::string name;       // e.g. "x#23", "guard#25"
  bool is_bool = false;
  int width = 32;         // numeric only, 1..32
  bool is_signed = true;  // numeric only
  VarRole role = VarRole::kInput;
  int defined_by = -1;    // constraint id that defines this variable, -1 if free
};

class VarTable {
 public:
  int add(VarInfo info) {
    vars_.push_back(std::move(info));
    return static_cast<int>(vars_.size()) - 1;
  }
  const VarInfo& operator[](int v) const { return vars_[v]; }
  VarInfo& operator[](int v) { return vars_[v]; }
  int size() const { return static_cast<int>(vars_.size()); }
  int find(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (vars_[i].name == name) return i;
    return -1;
  }

  // Smallest/largest concrete value representable in the variable's width.
  Bound min_value(int v) const {
    const VarInfo& i = vars_[v];
    if (i.is_bool) return 0;
    return i.is_signed ? -(Bound(1) << (i.width - 1)) : 0;
  }
  Bound max_value(int v) const {
    const VarInfo& i = vars_[v];
    if (i.is_bool) return 1;
    return i.is_signed ? (Bound(1) << (i.width - 1)) - 1
                       : (Bound(1) << i.width) - 1;
  }

 private:
  std::vector<VarInfo> vars_;
};

//=============================================================================
// Expressions
//=============================================================================

enum class Op {
  kConst,  // numeric literal (value in k, width/signedness on node)
  kBConst, // boolean literal (value in k: 0/1)
  kVar,    // variable reference (var)
  kNeg,    // unary minus
  kAdd, kSub, kMul,
  kCast,   // two's-complement truncation to the node's width
  kNot, kAnd, kOr,
  kEq, kNe, kLt, kLe, kGt, kGe,  // numeric comparison -> bool
  kBEq,   // boolean equivalence -> bool
  kIte,   // if-then-else: kids[0] bool, kids[1]/kids[2] same-typed arms
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  Op op;
  bool is_bool = false;
  int var = -1;          // kVar
  int64_t k = 0;         // kConst / kBConst
  int width = 32;        // numeric nodes
  bool is_signed = true; // numeric nodes
  std::vector<ExprPtr> kids;
};

// ---- constructors -----------------------------------------------------------

ExprPtr num_const(int64_t v, int width, bool is_signed);
ExprPtr bool_const(bool v);
ExprPtr var_ref(const VarTable& vt, int v);
ExprPtr unary(Op op, ExprPtr a);                  // kNeg / kNot
ExprPtr binary(Op op, ExprPtr a, ExprPtr b);      // arithmetic / logic / compare
ExprPtr ite(ExprPtr c, ExprPtr t, ExprPtr e);
ExprPtr cast_to(ExprPtr a, int width, bool is_signed);  // truncating cast

// Collects the distinct variables of e in first-occurrence order.
void collect_vars(const ExprPtr& e, std::vector<int>& out);

// Renders e with the variable names from vt; minimal parentheses.
std::string to_string(const ExprPtr& e, const VarTable& vt);

}  // namespace acdl
