// acdlv -- bounded safety checking with conflict-driven abstract learning.
// SPDX-License-Identifier: MIT

#include "acdl/ssa.h"

#include <cctype>
#include <map>

namespace acdl {

namespace {

//=============================================================================
// to_ssa
//=============================================================================

class SsaBuilder {
 public:
  explicit SsaBuilder(const Program& p) : prog_(p) {}

  SsaProgram run() {
    // guard#0 is the (free) entry guard: every model of the constraint set
    // forces it true through the negated assertion's guard conjunct, so it
    // needs no defining constraint.
    ssa_.entry_guard = add_var("guard#0", /*is_bool=*/true, VarRole::kGuard);
    cur_guard_ = ssa_.entry_guard;

    for (const auto& d : prog_.decls) {
      VarInfo vi;
      vi.name = d.name + "#" + std::to_string(counter_);
      vi.is_bool = d.is_bool;
      vi.width = d.width;
      vi.is_signed = d.is_signed;
      vi.role = VarRole::kInput;
      int v = ssa_.vars.add(vi);
      cur_.push_back(v);
      ssa_.input_vars.push_back(v);
      counter_ += d.is_bool ? 1 : 2;
    }

    for (const auto& s : prog_.stmts) emit_stmt(*s);

    // Negated assertion: some assert site is reached with a false condition.
    ExprPtr root;
    for (const auto& [guard, cond] : asserts_) {
      ExprPtr site = binary(Op::kAnd, var_ref(ssa_.vars, guard),
                            negate(cond));
      root = root ? binary(Op::kOr, root, site) : site;
    }
    if (!root) root = bool_const(false);  // no asserts: nothing can fail
    add_constraint(ConstraintKind::kNegAssert, root, -1);
    return std::move(ssa_);
  }

 private:
  int add_var(const std::string& name, bool is_bool, VarRole role,
              int width = 1, bool is_signed = true) {
    VarInfo vi;
    vi.name = name;
    vi.is_bool = is_bool;
    vi.width = width;
    vi.is_signed = is_signed;
    vi.role = role;
    return ssa_.vars.add(vi);
  }

  int add_constraint(ConstraintKind kind, ExprPtr root, int defined_var) {
    int id = static_cast<int>(ssa_.constraints.size());
    Constraint c;
    c.id = id;
    c.kind = kind;
    c.root = std::move(root);
    c.defined_var = defined_var;
    collect_vars(c.root, c.vars);
    if (defined_var >= 0) ssa_.vars[defined_var].defined_by = id;
    ssa_.constraints.push_back(std::move(c));
    return id;
  }

  static ExprPtr negate(const ExprPtr& e) {
    if (e->op == Op::kNot) return e->kids[0];
    return unary(Op::kNot, e);
  }

  // Rewrites a surface expression over declaration indices into one over the
  // current SSA versions.
  ExprPtr subst(const ExprPtr& e) {
    if (e->op == Op::kVar) return var_ref(ssa_.vars, cur_[e->var]);
    if (e->kids.empty()) return e;
    auto c = std::make_shared<Expr>(*e);
    std::vector<ExprPtr> kids;
    for (const auto& k : c->kids) kids.push_back(subst(k));
    c->kids = std::move(kids);
    return c;
  }

  // A bare boolean variable used as a branch condition is normalised to
  // `(v == true)` so the condition always gets its own cond#k symbol.
  ExprPtr as_condition(const ExprPtr& surface) {
    ExprPtr e = subst(surface);
    if (e->op == Op::kVar) return binary(Op::kBEq, e, bool_const(true));
    return e;
  }

  int define_cond(VarRole role, ExprPtr rhs) {
    int v = add_var("cond#" + std::to_string(counter_), true, role);
    ++counter_;
    add_constraint(ConstraintKind::kDefinition,
                   binary(Op::kBEq, var_ref(ssa_.vars, v), std::move(rhs)), v);
    return v;
  }

  // Guards take the current location index without consuming it.
  int define_guard(ExprPtr rhs) {
    int v = add_var("guard#" + std::to_string(counter_), true, VarRole::kGuard);
    add_constraint(ConstraintKind::kDefinition,
                   binary(Op::kBEq, var_ref(ssa_.vars, v), std::move(rhs)), v);
    return v;
  }

  void emit_stmt(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::kAssign: {
        const Decl& d = prog_.decls[s.lhs];
        ExprPtr rhs = subst(s.expr);
        int v = add_var(d.name + "#" + std::to_string(counter_), d.is_bool,
                        VarRole::kAssigned, d.width, d.is_signed);
        ++counter_;
        Op eq = d.is_bool ? Op::kBEq : Op::kEq;
        add_constraint(ConstraintKind::kDefinition,
                       binary(eq, var_ref(ssa_.vars, v), std::move(rhs)), v);
        cur_[s.lhs] = v;
        return;
      }
      case StmtKind::kAssume: {
        int cond = define_cond(VarRole::kAssumeCond, as_condition(s.expr));
        cur_guard_ = define_guard(binary(Op::kAnd, var_ref(ssa_.vars, cond),
                                         var_ref(ssa_.vars, cur_guard_)));
        return;
      }
      case StmtKind::kAssert: {
        asserts_.emplace_back(cur_guard_, subst(s.expr));
        ++counter_;
        return;
      }
      case StmtKind::kIf: {
        int cond = define_cond(VarRole::kBranchCond, as_condition(s.expr));
        int outer_guard = cur_guard_;
        std::vector<int> saved = cur_;

        int then_guard = define_guard(binary(Op::kAnd, var_ref(ssa_.vars, cond),
                                             var_ref(ssa_.vars, outer_guard)));
        cur_guard_ = then_guard;
        for (const auto& t : s.body) emit_stmt(*t);
        int then_final_guard = cur_guard_;
        std::vector<int> then_vers = cur_;
        int marker = define_cond(VarRole::kMarkerCond, bool_const(true));

        cur_ = saved;
        int else_guard = define_guard(
            binary(Op::kAnd, negate(var_ref(ssa_.vars, cond)),
                   var_ref(ssa_.vars, outer_guard)));
        cur_guard_ = else_guard;
        for (const auto& t : s.else_body) emit_stmt(*t);
        int else_final_guard = cur_guard_;

        // Join: one phi per variable the two arms disagree on, then the join
        // guard; all take the current location index.
        for (size_t d = 0; d < cur_.size(); ++d) {
          if (then_vers[d] == cur_[d]) continue;
          const Decl& dd = prog_.decls[d];
          int phi = add_var(dd.name + "#phi" + std::to_string(counter_),
                            dd.is_bool, VarRole::kPhi, dd.width, dd.is_signed);
          ExprPtr sel = ite(var_ref(ssa_.vars, else_final_guard),
                            var_ref(ssa_.vars, cur_[d]),
                            var_ref(ssa_.vars, then_vers[d]));
          Op eq = dd.is_bool ? Op::kBEq : Op::kEq;
          add_constraint(ConstraintKind::kPhi,
                         binary(eq, var_ref(ssa_.vars, phi), sel), phi);
          cur_[d] = phi;
        }
        cur_guard_ = define_guard(
            binary(Op::kOr,
                   binary(Op::kAnd, var_ref(ssa_.vars, marker),
                          var_ref(ssa_.vars, then_final_guard)),
                   var_ref(ssa_.vars, else_final_guard)));
        ++counter_;
        return;
      }
      case StmtKind::kWhile:
        throw ParseError("loops must be unrolled before SSA translation", 0);
    }
  }

  const Program& prog_;
  SsaProgram ssa_;
  // Location counter.  Starts at 16; int declarations advance it by 2,
  // bool declarations by 1.  Arbitrary conventions, frozen by golden tests.
  int counter_ = 16;
  std::vector<int> cur_;  // decl index -> current SSA version
  int cur_guard_ = -1;
  std::vector<std::pair<int, ExprPtr>> asserts_;  // (guard, condition)
};

}  // namespace

SsaProgram to_ssa(const Program& p) { return SsaBuilder(p).run(); }

std::string print_ssa(const SsaProgram& ssa) {
  std::string out;
  for (const auto& c : ssa.constraints) {
    if (c.defined_var >= 0) {
      // Definitions render as `lhs = rhs`; the root is lhs==rhs with the
      // defined variable on the left.
      out += ssa.vars[c.defined_var].name;
      out += " = ";
      ExprPtr rhs = c.root->kids[1];
      std::string r = to_string(rhs, ssa.vars);
      // An ite right-hand side prints without its outer parentheses.
      if (rhs->op == Op::kIte && r.size() >= 2 && r.front() == '(')
        r = r.substr(1, r.size() - 2);
      out += r;
    } else {
      out += to_string(c.root, ssa.vars);
    }
    out += "\n";
  }
  return out;
}

//=============================================================================
// S-expression constraint files
//=============================================================================

namespace {

struct Sx;
using SxPtr = std::shared_ptr<Sx>;
struct Sx {
  std::string atom;          // empty for lists
  std::vector<SxPtr> list;
  bool is_atom() const { return list.empty() && !atom.empty(); }
};

struct SxParser {
  const std::string& s;
  size_t pos = 0;
  int line = 1;

  void skip() {
    while (pos < s.size()) {
      char c = s[pos];
      if (c == '\n') { ++line; ++pos; continue; }
      if (std::isspace(static_cast<unsigned char>(c))) { ++pos; continue; }
      if (c == ';' || c == '#') {
        while (pos < s.size() && s[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
  }

  [[noreturn]] void fail(const std::string& m) const { throw ParseError(m, line); }

  SxPtr parse() {
    skip();
    if (pos >= s.size()) return nullptr;
    auto n = std::make_shared<Sx>();
    if (s[pos] == '(') {
      ++pos;
      while (true) {
        skip();
        if (pos >= s.size()) fail("unterminated list");
        if (s[pos] == ')') { ++pos; break; }
        n->list.push_back(parse());
      }
      if (n->list.empty()) fail("empty list");
      return n;
    }
    size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
           s[pos] != '(' && s[pos] != ')')
      ++pos;
    n->atom = s.substr(start, pos - start);
    if (n->atom.empty()) fail("expected atom");
    return n;
  }
};

class SxReader {
 public:
  explicit SxReader(const std::string& text) : parser_{text} {}

  SsaProgram run() {
    while (SxPtr form = parser_.parse()) read_form(form);
    ssa_.entry_guard = ssa_.vars.find("guard#0");
    return std::move(ssa_);
  }

 private:
  [[noreturn]] void fail(const std::string& m) const { parser_.fail(m); }

  void read_form(const SxPtr& f) {
    if (f->is_atom() || !f->list[0]->is_atom()) fail("expected (head ...)");
    const std::string& head = f->list[0]->atom;
    if (head == "var") {
      if (f->list.size() != 3) fail("(var name type)");
      VarInfo vi;
      vi.name = f->list[1]->atom;
      if (ssa_.vars.find(vi.name) >= 0) fail("duplicate var " + vi.name);
      const SxPtr& ty = f->list[2];
      if (ty->is_atom() && ty->atom == "bool") {
        vi.is_bool = true;
      } else if (!ty->is_atom() && ty->list.size() == 2 &&
                 (ty->list[0]->atom == "int" || ty->list[0]->atom == "uint")) {
        vi.is_signed = ty->list[0]->atom == "int";
        vi.width = std::stoi(ty->list[1]->atom);
        if (vi.width < 1 || vi.width > 32) fail("width must be in 1..32");
      } else {
        fail("type must be bool, (int W) or (uint W)");
      }
      vi.role = guess_role(vi.name);
      ssa_.vars.add(vi);
      return;
    }
    if (head == "def") {
      if (f->list.size() != 3) fail("(def name expr)");
      int v = ssa_.vars.find(f->list[1]->atom);
      if (v < 0) fail("undeclared " + f->list[1]->atom);
      ExprPtr rhs = expr(f->list[2], ssa_.vars[v].is_bool);
      rhs = coerce(rhs, v);
      Op eq = ssa_.vars[v].is_bool ? Op::kBEq : Op::kEq;
      add(ssa_.vars[v].is_bool || rhs->op != Op::kIte ? ConstraintKind::kDefinition
                                                      : ConstraintKind::kPhi,
          binary(eq, var_ref(ssa_.vars, v), rhs), v);
      return;
    }
    if (head == "clause" || head == "neg-assert") {
      if (f->list.size() != 2) fail("(" + head + " expr)");
      add(head == "clause" ? ConstraintKind::kClause : ConstraintKind::kNegAssert,
          expr(f->list[1], true), -1);
      return;
    }
    fail("unknown form " + head);
  }

  static VarRole guess_role(const std::string& name) {
    if (name.rfind("guard#", 0) == 0) return VarRole::kGuard;
    if (name.rfind("cond#", 0) == 0) return VarRole::kBranchCond;
    if (name.find("#phi") != std::string::npos) return VarRole::kPhi;
    return VarRole::kInput;
  }

  void add(ConstraintKind kind, ExprPtr root, int defined_var) {
    Constraint c;
    c.id = static_cast<int>(ssa_.constraints.size());
    c.kind = kind;
    c.root = finalize(std::move(root));
    c.defined_var = defined_var;
    collect_vars(c.root, c.vars);
    if (defined_var >= 0) ssa_.vars[defined_var].defined_by = c.id;
    ssa_.constraints.push_back(std::move(c));
  }

  // Integer literals are width-flexible until combined with a variable.
  ExprPtr expr(const SxPtr& f, bool want_bool) {
    if (f->is_atom()) {
      const std::string& a = f->atom;
      if (a == "true" || a == "false") return bool_const(a == "true");
      if (a[0] == '-' || std::isdigit(static_cast<unsigned char>(a[0]))) {
        auto e = std::make_shared<Expr>();
        e->op = Op::kConst;
        e->k = std::stoll(a);
        e->width = 0;
        return e;
      }
      int v = ssa_.vars.find(a);
      if (v < 0) fail("undeclared " + a);
      return var_ref(ssa_.vars, v);
    }
    const std::string& h = f->list[0]->atom;
    auto kid = [&](size_t i, bool b) { return expr(f->list[i], b); };
    auto nary = [&](Op op, bool b) {
      ExprPtr e = kid(1, b);
      for (size_t i = 2; i < f->list.size(); ++i) e = binary(op, e, kid(i, b));
      return e;
    };
    if (h == "+") return unified(Op::kAdd, kid(1, false), kid(2, false));
    if (h == "-") return unified(Op::kSub, kid(1, false), kid(2, false));
    if (h == "*") return unified(Op::kMul, kid(1, false), kid(2, false));
    if (h == "neg") {
      ExprPtr a = kid(1, false);
      if (a->is_bool) fail("numeric operand expected");
      ExprPtr e = unary(Op::kNeg, a);
      if (a->width != 0) {
        auto c = std::make_shared<Expr>(*e);
        c->width = 32;
        c->is_signed = !(a->width == 32 && !a->is_signed);
        return c;
      }
      return e;  // stays flexible
    }
    if (h == "and") return nary(Op::kAnd, true);
    if (h == "or") return nary(Op::kOr, true);
    if (h == "not") return unary(Op::kNot, kid(1, true));
    if (h == "ite") return ite(kid(1, true), kid(2, want_bool), kid(3, want_bool));
    if (h == "=") {
      ExprPtr a = kid(1, false), b = kid(2, false);
      if (a->is_bool != b->is_bool) fail("= mixes bool and numeric");
      if (a->is_bool) return binary(Op::kBEq, a, b);
      return unified(Op::kEq, a, b);
    }
    if (h == "!=") {
      ExprPtr a = kid(1, false), b = kid(2, false);
      if (a->is_bool != b->is_bool) fail("!= mixes bool and numeric");
      if (a->is_bool) return unary(Op::kNot, binary(Op::kBEq, a, b));
      return unified(Op::kNe, a, b);
    }
    if (h == "<") return unified(Op::kLt, kid(1, false), kid(2, false));
    if (h == "<=") return unified(Op::kLe, kid(1, false), kid(2, false));
    if (h == ">") return unified(Op::kGt, kid(1, false), kid(2, false));
    if (h == ">=") return unified(Op::kGe, kid(1, false), kid(2, false));
    fail("unknown operator " + h);
  }

  ExprPtr adopt(const ExprPtr& e, int w, bool s) {
    if (e->is_bool || e->width != 0) return e;
    auto c = std::make_shared<Expr>(*e);
    c->width = w;
    c->is_signed = s;
    std::vector<ExprPtr> kids;
    for (const auto& k : c->kids) kids.push_back(adopt(k, w, s));
    c->kids = std::move(kids);
    return c;
  }

  ExprPtr coerce(ExprPtr e, int var) {
    const VarInfo& vi = ssa_.vars[var];
    if (vi.is_bool) return e;
    if (e->width == 0) return adopt(e, vi.width, vi.is_signed);
    if (e->width == vi.width && e->is_signed == vi.is_signed) return e;
    Bound rlo = e->is_signed ? -(Bound(1) << (e->width - 1)) : 0;
    Bound rhi = e->is_signed ? (Bound(1) << (e->width - 1)) - 1
                             : (Bound(1) << e->width) - 1;
    Bound tlo = vi.is_signed ? -(Bound(1) << (vi.width - 1)) : 0;
    Bound thi = vi.is_signed ? (Bound(1) << (vi.width - 1)) - 1
                             : (Bound(1) << vi.width) - 1;
    if (rlo < tlo || rhi > thi) return cast_to(e, vi.width, vi.is_signed);
    return e;
  }

  // Same promotion rules as the surface language: arithmetic and comparisons
  // compute at width 32 (unsigned when a uint<32> operand is involved).
  ExprPtr unified(Op op, ExprPtr a, ExprPtr b) {
    if (a->is_bool || b->is_bool) fail("numeric operands expected");
    bool a_u32 = a->width == 32 && !a->is_signed;
    bool b_u32 = b->width == 32 && !b->is_signed;
    if (a->width && b->width && a_u32 != b_u32)
      fail("mixing uint<32> with signed operands");
    int w = (a->width || b->width) ? 32 : 0;
    bool sgn = a->width ? !a_u32 : !b_u32;
    if (w) {
      if (a->width == 0) a = adopt(a, w, sgn);
      if (b->width == 0) b = adopt(b, w, sgn);
    }
    ExprPtr e = binary(op, a, b);
    auto c = std::make_shared<Expr>(*e);
    if (op == Op::kAdd || op == Op::kSub || op == Op::kMul) {
      c->width = w;
      c->is_signed = w ? sgn : true;
    }
    return c;
  }

  ExprPtr finalize(ExprPtr e) {
    if (!e->is_bool && e->width == 0) return adopt(e, 32, true);
    if (e->kids.empty()) return e;
    auto c = std::make_shared<Expr>(*e);
    std::vector<ExprPtr> kids;
    for (const auto& k : c->kids) kids.push_back(finalize(k));
    c->kids = std::move(kids);
    return c;
  }

  SxParser parser_;
  SsaProgram ssa_;
};

}  // namespace

SsaProgram parse_ssa_sexpr(const std::string& text) {
  return SxReader(text).run();
}

}  // namespace acdl
