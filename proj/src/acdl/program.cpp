// acdlv -- bounded safety checking with conflict-driven abstract learning.
// SPDX-License-Identifier: MIT

#include "acdl/program.h"

#include <cctype>

namespace acdl {

//=============================================================================
// Lexer
//=============================================================================

namespace {

enum class Tok {
  kEof, kIdent, kNumber,
  kInt, kUint, kBool, kTrue, kFalse,
  kAssume, kAssert, kIf, kElse, kWhile, kBoundKw,
  kLParen, kRParen, kLBrace, kRBrace, kSemi,
  kAssign, kPlus, kMinus, kStar, kBang,
  kAndAnd, kOrOr, kEqEq, kBangEq, kLt, kLe, kGt, kGe,
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1;
  Tok tok = Tok::kEof;
  std::string ident;
  int64_t number = 0;

  explicit Lexer(const std::string& s) : src(s) { next(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line);
  }

  void next() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '\n') { ++line; ++pos; continue; }
      if (std::isspace(static_cast<unsigned char>(c))) { ++pos; continue; }
      if (c == '/' && pos + 1 < src.size() && src[pos + 1] == '/') {
        while (pos < src.size() && src[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
    if (pos >= src.size()) { tok = Tok::kEof; return; }
    char c = src[pos];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) ||
              src[pos] == '_'))
        ++pos;
      ident = src.substr(start, pos - start);
      if (ident == "int") tok = Tok::kInt;
      else if (ident == "uint") tok = Tok::kUint;
      else if (ident == "bool") tok = Tok::kBool;
      else if (ident == "true") tok = Tok::kTrue;
      else if (ident == "false") tok = Tok::kFalse;
      else if (ident == "assume") tok = Tok::kAssume;
      else if (ident == "assert") tok = Tok::kAssert;
      else if (ident == "if") tok = Tok::kIf;
      else if (ident == "else") tok = Tok::kElse;
      else if (ident == "while") tok = Tok::kWhile;
      else if (ident == "bound") tok = Tok::kBoundKw;
      else tok = Tok::kIdent;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      int64_t v = 0;
      while (pos < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[pos]))) {
        v = v * 10 + (src[pos] - '0');
        if (v > (int64_t(1) << 40)) fail("integer literal too large");
        ++pos;
      }
      number = v;
      tok = Tok::kNumber;
      return;
    }
    auto two = [&](char a, char b) {
      return c == a && pos + 1 < src.size() && src[pos + 1] == b;
    };
    if (two('&', '&')) { tok = Tok::kAndAnd; pos += 2; return; }
    if (two('|', '|')) { tok = Tok::kOrOr; pos += 2; return; }
    if (two('=', '=')) { tok = Tok::kEqEq; pos += 2; return; }
    if (two('!', '=')) { tok = Tok::kBangEq; pos += 2; return; }
    if (two('<', '=')) { tok = Tok::kLe; pos += 2; return; }
    if (two('>', '=')) { tok = Tok::kGe; pos += 2; return; }
    ++pos;
    switch (c) {
      case '(': tok = Tok::kLParen; return;
      case ')': tok = Tok::kRParen; return;
      case '{': tok = Tok::kLBrace; return;
      case '}': tok = Tok::kRBrace; return;
      case ';': tok = Tok::kSemi; return;
      case '=': tok = Tok::kAssign; return;
      case '+': tok = Tok::kPlus; return;
      case '-': tok = Tok::kMinus; return;
      case '*': tok = Tok::kStar; return;
      case '!': tok = Tok::kBang; return;
      case '<': tok = Tok::kLt; return;
      case '>': tok = Tok::kGt; return;
      default: fail(std::string("unexpected character '") + c + "'");
    }
  }
};

//=============================================================================
// Parser
//=============================================================================
//
// Integer arithmetic follows C's usual promotions: operands narrower than 32
// bits are promoted value-preservingly, and every arithmetic or comparison
// node computes at width 32 (unsigned 32 if a uint<32> operand is involved;
// mixing uint<32> with signed operands is rejected).  Assigning a wide value
// to a narrow variable truncates, two's-complement style, via an explicit
// cast node.  Integer literals start "flexible" (width 0) and adopt the type
// of the operation that consumes them.

struct Parser {
  Lexer lx;
  Program prog;

  explicit Parser(const std::string& s) : lx(s) {}

  void expect(Tok t, const char* what) {
    if (lx.tok != t) lx.fail(std::string("expected ") + what);
    lx.next();
  }

  bool flexible(const ExprPtr& e) const { return !e->is_bool && e->width == 0; }

  struct NumType { int width = 0; bool is_signed = true; };  // width 0 = flexible

  NumType promoted(const ExprPtr& e) const {
    if (flexible(e)) return {0, true};
    if (e->width == 32 && !e->is_signed) return {32, false};
    return {32, true};
  }

  // Gives every flexible constant subtree the concrete type (w, s).
  ExprPtr adopt(const ExprPtr& e, int w, bool s) {
    if (e->is_bool || e->width != 0) return e;
    auto c = std::make_shared<Expr>(*e);
    c->width = w;
    c->is_signed = s;
    std::vector<ExprPtr> kids;
    for (const auto& k : c->kids) kids.push_back(adopt(k, w, s));
    c->kids = std::move(kids);
    if (c->op == Op::kConst) {
      Bound lo = s ? -(Bound(1) << (w - 1)) : 0;
      Bound hi = s ? (Bound(1) << (w - 1)) - 1 : (Bound(1) << w) - 1;
      if (c->k < lo || c->k > hi) lx.fail("integer literal out of range for width");
    }
    return c;
  }

  // Defaults any still-flexible subtree to int 32 (e.g. `assert(1 < 2)`).
  ExprPtr finalize(const ExprPtr& e) {
    if (!e->is_bool && e->width == 0) return adopt(e, 32, true);
    if (e->kids.empty()) return e;
    auto c = std::make_shared<Expr>(*e);
    std::vector<ExprPtr> kids;
    for (const auto& k : c->kids) kids.push_back(finalize(k));
    c->kids = std::move(kids);
    return c;
  }

  // Applies the usual promotions to both operands and returns the type the
  // operation computes at (width 0 while both sides are still literals).
  NumType unify(ExprPtr& a, ExprPtr& b) {
    if (a->is_bool || b->is_bool) lx.fail("numeric operand expected");
    NumType ta = promoted(a), tb = promoted(b);
    if (ta.width && tb.width && ta.is_signed != tb.is_signed)
      lx.fail("mixing uint<32> with signed operands");
    NumType t = ta.width ? ta : tb;
    if (t.width) {
      if (flexible(a)) a = adopt(a, t.width, t.is_signed);
      if (flexible(b)) b = adopt(b, t.width, t.is_signed);
    }
    return t;
  }

  ExprPtr num_binary(Op op, ExprPtr a, ExprPtr b) {
    NumType t = unify(a, b);
    ExprPtr e = binary(op, a, b);
    auto c = std::make_shared<Expr>(*e);
    c->width = t.width;  // stays flexible (0) if both sides are literals
    c->is_signed = t.is_signed;
    return c;
  }

  ExprPtr parse_primary() {
    switch (lx.tok) {
      case Tok::kNumber: {
        int64_t v = lx.number;
        lx.next();
        auto e = std::make_shared<Expr>();
        e->op = Op::kConst;
        e->k = v;
        e->width = 0;  // flexible until unified
        return e;
      }
      case Tok::kTrue: lx.next(); return bool_const(true);
      case Tok::kFalse: lx.next(); return bool_const(false);
      case Tok::kIdent: {
        int d = prog.find_decl(lx.ident);
        if (d < 0) lx.fail("undeclared variable '" + lx.ident + "'");
        lx.next();
        const Decl& dd = prog.decls[d];
        auto e = std::make_shared<Expr>();
        e->op = Op::kVar;
        e->var = d;
        e->is_bool = dd.is_bool;
        e->width = dd.width;
        e->is_signed = dd.is_signed;
        return e;
      }
      case Tok::kLParen: {
        lx.next();
        ExprPtr e = parse_or();
        expect(Tok::kRParen, "')'");
        return e;
      }
      default: lx.fail("expected expression");
    }
  }

  ExprPtr parse_unary() {
    if (lx.tok == Tok::kMinus) {
      lx.next();
      ExprPtr a = parse_unary();
      if (a->is_bool) lx.fail("'-' needs a numeric operand");
      NumType t = promoted(a);
      ExprPtr e = unary(Op::kNeg, a);
      auto c = std::make_shared<Expr>(*e);
      c->width = t.width;  // stays flexible if the operand is
      c->is_signed = t.is_signed;
      return c;
    }
    if (lx.tok == Tok::kBang) {
      lx.next();
      ExprPtr a = parse_unary();
      if (!a->is_bool) lx.fail("'!' needs a boolean operand");
      return unary(Op::kNot, a);
    }
    return parse_primary();
  }

  ExprPtr parse_mul() {
    ExprPtr e = parse_unary();
    while (lx.tok == Tok::kStar) {
      lx.next();
      e = num_binary(Op::kMul, e, parse_unary());
    }
    return e;
  }

  ExprPtr parse_add() {
    ExprPtr e = parse_mul();
    while (lx.tok == Tok::kPlus || lx.tok == Tok::kMinus) {
      Op op = lx.tok == Tok::kPlus ? Op::kAdd : Op::kSub;
      lx.next();
      e = num_binary(op, e, parse_mul());
    }
    return e;
  }

  ExprPtr parse_rel() {
    ExprPtr e = parse_add();
    while (lx.tok == Tok::kLt || lx.tok == Tok::kLe || lx.tok == Tok::kGt ||
           lx.tok == Tok::kGe) {
      Op op = lx.tok == Tok::kLt   ? Op::kLt
              : lx.tok == Tok::kLe ? Op::kLe
              : lx.tok == Tok::kGt ? Op::kGt
                                   : Op::kGe;
      lx.next();
      ExprPtr rhs = parse_add();
      ExprPtr l = e;
      unify(l, rhs);
      e = binary(op, l, rhs);
    }
    return e;
  }

  ExprPtr parse_eq() {
    ExprPtr e = parse_rel();
    while (lx.tok == Tok::kEqEq || lx.tok == Tok::kBangEq) {
      bool neq = lx.tok == Tok::kBangEq;
      lx.next();
      ExprPtr rhs = parse_rel();
      if (e->is_bool != rhs->is_bool) lx.fail("comparing boolean with number");
      ExprPtr out;
      if (e->is_bool) {
        out = binary(Op::kBEq, e, rhs);
      } else {
        ExprPtr l = e;
        unify(l, rhs);
        out = binary(neq ? Op::kNe : Op::kEq, l, rhs);
        neq = false;
      }
      e = neq ? unary(Op::kNot, out) : out;
    }
    return e;
  }

  ExprPtr parse_and() {
    ExprPtr e = parse_eq();
    while (lx.tok == Tok::kAndAnd) {
      lx.next();
      ExprPtr rhs = parse_eq();
      if (!e->is_bool || !rhs->is_bool) lx.fail("'&&' needs boolean operands");
      e = binary(Op::kAnd, e, rhs);
    }
    return e;
  }

  ExprPtr parse_or() {
    ExprPtr e = parse_and();
    while (lx.tok == Tok::kOrOr) {
      lx.next();
      ExprPtr rhs = parse_and();
      if (!e->is_bool || !rhs->is_bool) lx.fail("'||' needs boolean operands");
      e = binary(Op::kOr, e, rhs);
    }
    return e;
  }

  ExprPtr parse_bool_expr(const char* where) {
    ExprPtr e = finalize(parse_or());
    if (!e->is_bool) lx.fail(std::string(where) + " must be boolean");
    return e;
  }

  void parse_decl() {
    bool is_bool = lx.tok == Tok::kBool;
    bool is_signed = lx.tok != Tok::kUint;
    int width = 32;
    lx.next();
    if (!is_bool && lx.tok == Tok::kLt) {
      lx.next();
      if (lx.tok != Tok::kNumber) lx.fail("expected width");
      width = static_cast<int>(lx.number);
      if (width < 1 || width > 32) lx.fail("width must be in 1..32");
      lx.next();
      expect(Tok::kGt, "'>'");
    }
    if (lx.tok != Tok::kIdent) lx.fail("expected identifier");
    if (prog.find_decl(lx.ident) >= 0) lx.fail("redeclaration of '" + lx.ident + "'");
    prog.decls.push_back({lx.ident, is_bool, is_bool ? 1 : width, is_signed});
    lx.next();
    expect(Tok::kSemi, "';'");
  }

  std::vector<StmtPtr> parse_block() {
    std::vector<StmtPtr> out;
    if (lx.tok == Tok::kLBrace) {
      lx.next();
      while (lx.tok != Tok::kRBrace) out.push_back(parse_stmt());
      lx.next();
    } else {
      out.push_back(parse_stmt());
    }
    return out;
  }

  StmtPtr parse_stmt() {
    auto s = std::make_shared<Stmt>();
    switch (lx.tok) {
      case Tok::kAssume:
      case Tok::kAssert: {
        s->kind = lx.tok == Tok::kAssume ? StmtKind::kAssume : StmtKind::kAssert;
        const char* what = s->kind == StmtKind::kAssume ? "assume condition"
                                                        : "assert condition";
        lx.next();
        expect(Tok::kLParen, "'('");
        s->expr = parse_bool_expr(what);
        expect(Tok::kRParen, "')'");
        expect(Tok::kSemi, "';'");
        return s;
      }
      case Tok::kIf: {
        s->kind = StmtKind::kIf;
        lx.next();
        expect(Tok::kLParen, "'('");
        s->expr = parse_bool_expr("if condition");
        expect(Tok::kRParen, "')'");
        s->body = parse_block();
        if (lx.tok == Tok::kElse) {
          lx.next();
          s->else_body = parse_block();
        }
        return s;
      }
      case Tok::kWhile: {
        s->kind = StmtKind::kWhile;
        lx.next();
        expect(Tok::kLParen, "'('");
        s->expr = parse_bool_expr("while condition");
        expect(Tok::kRParen, "')'");
        if (lx.tok == Tok::kBoundKw) {
          lx.next();
          if (lx.tok != Tok::kNumber) lx.fail("expected unroll bound");
          s->bound = static_cast<int>(lx.number);
          lx.next();
        }
        s->body = parse_block();
        return s;
      }
      case Tok::kIdent: {
        int d = prog.find_decl(lx.ident);
        if (d < 0) lx.fail("undeclared variable '" + lx.ident + "'");
        lx.next();
        expect(Tok::kAssign, "'='");
        s->kind = StmtKind::kAssign;
        s->lhs = d;
        ExprPtr rhs = finalize(parse_or());
        const Decl& dd = prog.decls[d];
        if (dd.is_bool != rhs->is_bool)
          lx.fail("assignment mixes boolean and numeric");
        if (!dd.is_bool) {
          if (rhs->width == 0) {
            rhs = adopt(rhs, dd.width, dd.is_signed);
          } else if (rhs->width != dd.width || rhs->is_signed != dd.is_signed) {
            // Direct when every rhs value fits the target; otherwise the
            // assignment truncates, which an explicit cast node records.
            Bound rlo = rhs->is_signed ? -(Bound(1) << (rhs->width - 1)) : 0;
            Bound rhi = rhs->is_signed ? (Bound(1) << (rhs->width - 1)) - 1
                                       : (Bound(1) << rhs->width) - 1;
            Bound tlo = dd.is_signed ? -(Bound(1) << (dd.width - 1)) : 0;
            Bound thi = dd.is_signed ? (Bound(1) << (dd.width - 1)) - 1
                                     : (Bound(1) << dd.width) - 1;
            if (rlo < tlo || rhi > thi)
              rhs = cast_to(rhs, dd.width, dd.is_signed);
          }
        }
        s->expr = rhs;
        expect(Tok::kSemi, "';'");
        return s;
      }
      default: lx.fail("expected statement");
    }
  }

  Program run() {
    while (lx.tok == Tok::kInt || lx.tok == Tok::kUint || lx.tok == Tok::kBool)
      parse_decl();
    while (lx.tok != Tok::kEof) prog.stmts.push_back(parse_stmt());
    return std::move(prog);
  }
};

//=============================================================================
// Unrolling
//=============================================================================

StmtPtr unroll_stmt(const StmtPtr& s, int default_bound);

std::vector<StmtPtr> unroll_block(const std::vector<StmtPtr>& b, int db) {
  std::vector<StmtPtr> out;
  out.reserve(b.size());
  for (const auto& s : b) out.push_back(unroll_stmt(s, db));
  return out;
}

StmtPtr expand_while(const ExprPtr& cond, const std::vector<StmtPtr>& body,
                     int k, int db) {
  if (k == 0) {
    auto s = std::make_shared<Stmt>();
    s->kind = StmtKind::kAssume;
    s->expr = unary(Op::kNot, cond);
    return s;
  }
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::kIf;
  s->expr = cond;
  s->body = body;
  s->body.push_back(expand_while(cond, body, k - 1, db));
  return s;
}

StmtPtr unroll_stmt(const StmtPtr& s, int db) {
  switch (s->kind) {
    case StmtKind::kWhile: {
      int k = s->bound >= 0 ? s->bound : db;
      return expand_while(s->expr, unroll_block(s->body, db), k, db);
    }
    case StmtKind::kIf: {
      auto c = std::make_shared<Stmt>(*s);
      c->body = unroll_block(s->body, db);
      c->else_body = unroll_block(s->else_body, db);
      return c;
    }
    default:
      return s;
  }
}

}  // namespace

Program parse_program(const std::string& text) {
  return Parser(text).run();
}

Program unroll(const Program& p, int default_bound) {
  Program out;
  out.decls = p.decls;
  out.stmts = unroll_block(p.stmts, default_bound);
  return out;
}

}  // namespace acdl
