// acdlv -- bounded safety checking with conflict-driven abstract learning.
// SPDX-License-Identifier: MIT
//
// Surface language: declarations, assignments, assume/assert, if/else and
// bounded while over fixed-width integers and booleans.  Statements are
// immutable and shared, so loop unrolling can duplicate bodies without
// cloning subtrees.

#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "acdl/expr.h"

namespace acdl {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

struct Decl {
  std::string name;
  bool is_bool = false;
  int width = 32;
  bool is_signed = true;
};

enum class StmtKind { kAssign, kAssume, kAssert, kIf, kWhile };

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;

struct Stmt {
  StmtKind kind;
  int lhs = -1;                    // kAssign: decl index
  ExprPtr expr;                    // rhs / condition; vars are decl indices
  std::vector<StmtPtr> body;       // kIf then / kWhile body
  std::vector<StmtPtr> else_body;  // kIf else
  int bound = -1;                  // kWhile: per-loop unroll bound, -1 = default
};

struct Program {
  std::vector<Decl> decls;
  std::vector<StmtPtr> stmts;

  int find_decl(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(decls.size()); ++i)
      if (decls[i].name == name) return i;
    return -1;
  }
};

// Parses surface text; throws ParseError.  Expression variables reference
// declaration indices; numeric operators require equal operand widths
// (integer literals adopt the width of the variable they meet).
Program parse_program(const std::string& text);

// Replaces every while-loop by nested if/assume unrollings.  A loop with an
// explicit `bound N` uses N, otherwise default_bound.  Depth k expands to
//   k = 0:  assume(!cond);
//   k > 0:  if (cond) { body; <expansion of k-1> }
Program unroll(const Program& p, int default_bound);

}  // namespace acdl
