// acdlv -- bounded safety checking with conflict-driven abstract learning.
// SPDX-License-Identifier: MIT

#include "acdl/oracle.h"

#include <stdexcept>

namespace acdl {

Bound wrap_width(Bound v, int width, bool is_signed) {
  uint64_t mask = width == 64 ? ~uint64_t(0) : (uint64_t(1) << width) - 1;
  uint64_t m = static_cast<uint64_t>(v) & mask;
  if (is_signed && width < 64 && (m & (uint64_t(1) << (width - 1))))
    return static_cast<Bound>(m) - (Bound(1) << width);
  return static_cast<Bound>(m);
}

Bound eval_concrete(const ExprPtr& e, const ConcreteMap& u) {
  switch (e->op) {
    case Op::kConst: return wrap_width(e->k, e->width, e->is_signed);
    case Op::kBConst: return e->k;
    case Op::kVar: return u[e->var];
    case Op::kNeg:
      return wrap_width(-eval_concrete(e->kids[0], u), e->width, e->is_signed);
    case Op::kAdd:
      return wrap_width(eval_concrete(e->kids[0], u) + eval_concrete(e->kids[1], u),
                        e->width, e->is_signed);
    case Op::kSub:
      return wrap_width(eval_concrete(e->kids[0], u) - eval_concrete(e->kids[1], u),
                        e->width, e->is_signed);
    case Op::kMul:
      return wrap_width(eval_concrete(e->kids[0], u) * eval_concrete(e->kids[1], u),
                        e->width, e->is_signed);
    case Op::kCast:
      return wrap_width(eval_concrete(e->kids[0], u), e->width, e->is_signed);
    case Op::kNot: return 1 - eval_concrete(e->kids[0], u);
    case Op::kAnd:
      return eval_concrete(e->kids[0], u) && eval_concrete(e->kids[1], u);
    case Op::kOr:
      return eval_concrete(e->kids[0], u) || eval_concrete(e->kids[1], u);
    case Op::kEq:
    case Op::kBEq:
      return eval_concrete(e->kids[0], u) == eval_concrete(e->kids[1], u);
    case Op::kNe:
      return eval_concrete(e->kids[0], u) != eval_concrete(e->kids[1], u);
    case Op::kLt:
      return eval_concrete(e->kids[0], u) < eval_concrete(e->kids[1], u);
    case Op::kLe:
      return eval_concrete(e->kids[0], u) <= eval_concrete(e->kids[1], u);
    case Op::kGt:
      return eval_concrete(e->kids[0], u) > eval_concrete(e->kids[1], u);
    case Op::kGe:
      return eval_concrete(e->kids[0], u) >= eval_concrete(e->kids[1], u);
    case Op::kIte:
      return eval_concrete(e->kids[0], u) ? eval_concrete(e->kids[1], u)
                                          : eval_concrete(e->kids[2], u);
  }
  return 0;  // unreachable
}

bool satisfies(const SsaProgram& ssa, const ConcreteMap& u) {
  for (const auto& c : ssa.constraints)
    if (!eval_concrete(c.root, u)) return false;
  return true;
}

void eval_defined(const SsaProgram& ssa, ConcreteMap& u) {
  for (const auto& c : ssa.constraints) {
    if (c.defined_var < 0) continue;
    // root is `defined == rhs`; evaluate the right-hand side.
    u[c.defined_var] = eval_concrete(c.root->kids[1], u);
  }
}

BruteResult brute_force_verdict(const SsaProgram& ssa, uint64_t cap) {
  std::vector<int> free_vars;
  uint64_t space = 1;
  for (int v = 0; v < ssa.vars.size(); ++v) {
    if (ssa.vars[v].defined_by >= 0) continue;
    free_vars.push_back(v);
    uint64_t range =
        static_cast<uint64_t>(ssa.vars.max_value(v) - ssa.vars.min_value(v)) + 1;
    space = (range > cap || space > cap / range) ? cap + 1 : space * range;
    if (space > cap)
      throw std::runtime_error("brute_force_verdict: state space exceeds cap");
  }

  BruteResult res;
  ConcreteMap u(ssa.vars.size(), 0);
  for (int v : free_vars) u[v] = ssa.vars.min_value(v);

  // Odometer enumeration, lexicographic in declaration order: the FIRST free
  // variable is the most significant digit.
  while (true) {
    eval_defined(ssa, u);
    ++res.states_checked;
    if (satisfies(ssa, u)) {
      res.unsafe = true;
      res.witness = u;
      return res;
    }
    int i = static_cast<int>(free_vars.size()) - 1;
    for (; i >= 0; --i) {
      int v = free_vars[i];
      if (u[v] < ssa.vars.max_value(v)) {
        ++u[v];
        break;
      }
      u[v] = ssa.vars.min_value(v);
    }
    if (i < 0) return res;
  }
}

std::optional<ConcreteMap> replay_witness(
    const SsaProgram& ssa, const std::vector<std::pair<int, Bound>>& partial) {
  ConcreteMap u(ssa.vars.size(), 0);
  for (int v = 0; v < ssa.vars.size(); ++v)
    if (ssa.vars[v].defined_by < 0) u[v] = ssa.vars.min_value(v);
  for (const auto& [v, val] : partial)
    if (ssa.vars[v].defined_by < 0) u[v] = val;
  eval_defined(ssa, u);
  for (const auto& [v, val] : partial)
    if (u[v] != val) return std::nullopt;  // defined value disagrees
  if (!satisfies(ssa, u)) return std::nullopt;
  return u;
}

//=============================================================================
// Straight-line interpreter for the surface language
//=============================================================================

namespace {

// Evaluates a surface expression (variables are declaration indices).
Bound eval_surface(const ExprPtr& e, const std::vector<Bound>& env) {
  return eval_concrete(e, env);  // same tree shape, ids index env
}

enum class RunStatus { kOk, kStopped, kViolated };

RunStatus run_block(const std::vector<StmtPtr>& stmts, const Program& p,
                    std::vector<Bound>& env) {
  for (const auto& s : stmts) {
    switch (s->kind) {
      case StmtKind::kAssign: {
        const Decl& d = p.decls[s->lhs];
        Bound v = eval_surface(s->expr, env);
        env[s->lhs] = d.is_bool ? v : wrap_width(v, d.width, d.is_signed);
        break;
      }
      case StmtKind::kAssume:
        if (!eval_surface(s->expr, env)) return RunStatus::kStopped;
        break;
      case StmtKind::kAssert:
        if (!eval_surface(s->expr, env)) return RunStatus::kViolated;
        break;
      case StmtKind::kIf: {
        RunStatus r = eval_surface(s->expr, env)
                          ? run_block(s->body, p, env)
                          : run_block(s->else_body, p, env);
        if (r != RunStatus::kOk) return r;
        break;
      }
      case StmtKind::kWhile:
        throw std::runtime_error("run_concrete: program must be loop-free");
    }
  }
  return RunStatus::kOk;
}

}  // namespace

bool run_concrete(const Program& p, const std::vector<Bound>& init) {
  std::vector<Bound> env = init;
  env.resize(p.decls.size(), 0);
  return run_block(p.stmts, p, env) == RunStatus::kViolated;
}

}  // namespace acdl
