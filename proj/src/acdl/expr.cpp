// acdlv -- bounded safety checking with conflict-driven abstract learning.
// SPDX-License-Identifier: MIT

#include "acdl/expr.h"

#include <algorithm>
#include <stdexcept>

namespace acdl {

ExprPtr num_const(int64_t v, int width, bool is_signed) {
  auto e = std::make_shared<Expr>();
  e->op = Op::kConst;
  e->k = v;
  e->width = width;
  e->is_signed = is_signed;
  return e;
}

ExprPtr bool_const(bool v) {
  auto e = std::make_shared<Expr>();
  e->op = Op::kBConst;
  e->is_bool = true;
  e->k = v ? 1 : 0;
  return e;
}

ExprPtr var_ref(const VarTable& vt, int v) {
  auto e = std::make_shared<Expr>();
  e->op = Op::kVar;
  e->var = v;
  const VarInfo& info = vt[v];
  e->is_bool = info.is_bool;
  e->width = info.width;
  e->is_signed = info.is_signed;
  return e;
}

ExprPtr unary(Op op, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  if (op == Op::kNot) {
    e->is_bool = true;
  } else {  // kNeg
    e->width = a->width;
    e->is_signed = a->is_signed;
  }
  e->kids = {std::move(a)};
  return e;
}

ExprPtr binary(Op op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  switch (op) {
    case Op::kAdd: case Op::kSub: case Op::kMul:
      e->width = a->width;
      e->is_signed = a->is_signed;
      break;
    default:
      e->is_bool = true;
      break;
  }
  e->kids = {std::move(a), std::move(b)};
  return e;
}

ExprPtr ite(ExprPtr c, ExprPtr t, ExprPtr e2) {
  auto e = std::make_shared<Expr>();
  e->op = Op::kIte;
  e->is_bool = t->is_bool;
  e->width = t->width;
  e->is_signed = t->is_signed;
  e->kids = {std::move(c), std::move(t), std::move(e2)};
  return e;
}

ExprPtr cast_to(ExprPtr a, int width, bool is_signed) {
  auto e = std::make_shared<Expr>();
  e->op = Op::kCast;
  e->width = width;
  e->is_signed = is_signed;
  e->kids = {std::move(a)};
  return e;
}

void collect_vars(const ExprPtr& e, std::vector<int>& out) {
  if (e->op == Op::kVar) {
    if (std::find(out.begin(), out.end(), e->var) == out.end())
      out.push_back(e->var);
    return;
  }
  for (const auto& k : e->kids) collect_vars(k, out);
}

namespace {

int precedence(Op op) {
  switch (op) {
    case Op::kOr: return 1;
    case Op::kAnd: return 2;
    case Op::kBEq: return 3;
    case Op::kEq: case Op::kNe: return 4;
    case Op::kLt: case Op::kLe: case Op::kGt: case Op::kGe: return 5;
    case Op::kAdd: case Op::kSub: return 6;
    case Op::kMul: return 7;
    case Op::kNeg: case Op::kNot: case Op::kCast: return 8;
    default: return 9;
  }
}

const char* op_token(Op op) {
  switch (op) {
    case Op::kAdd: return " + ";
    case Op::kSub: return " - ";
    case Op::kMul: return " * ";
    case Op::kAnd: return " && ";
    case Op::kOr: return " || ";
    case Op::kEq: return " == ";
    case Op::kBEq: return " == ";
    case Op::kNe: return " != ";
    case Op::kLt: return " < ";
    case Op::kLe: return " <= ";
    case Op::kGt: return " > ";
    case Op::kGe: return " >= ";
    default: return "?";
  }
}

void render(const ExprPtr& e, const VarTable& vt, int parent_prec,
            std::string& out) {
  int prec = precedence(e->op);
  switch (e->op) {
    case Op::kConst: out += std::to_string(e->k); return;
    case Op::kBConst: out += e->k ? "true" : "false"; return;
    case Op::kVar: out += vt[e->var].name; return;
    case Op::kNeg:
      out += "-";
      render(e->kids[0], vt, prec, out);
      return;
    case Op::kNot:
      out += "!";
      render(e->kids[0], vt, prec, out);
      return;
    case Op::kCast:
      out += e->is_signed ? "(int<" : "(uint<";
      out += std::to_string(e->width);
      out += ">)";
      render(e->kids[0], vt, prec, out);
      return;
    case Op::kIte:
      out += "(";
      render(e->kids[0], vt, 0, out);
      out += " ? ";
      render(e->kids[1], vt, 0, out);
      out += " : ";
      render(e->kids[2], vt, 0, out);
      out += ")";
      return;
    default: {
      bool paren = prec < parent_prec;
      if (paren) out += "(";
      render(e->kids[0], vt, prec, out);
      out += op_token(e->op);
      render(e->kids[1], vt, prec + 1, out);
      if (paren) out += ")";
      return;
    }
  }
}

}  // namespace

std::string to_string(const ExprPtr& e, const VarTable& vt) {
  std::string out;
  render(e, vt, 0, out);
  return out;
}

}  // namespace acdl
