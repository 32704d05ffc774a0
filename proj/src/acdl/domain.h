// acdlv -- bounded safety checking with conflict-driven abstract learning.
// SPDX-License-Identifier: MIT
//
// Template-constraint abstract domain.  A template is a fixed list of rows
// (small-coefficient linear forms over the numeric variables); an abstract
// value is the tightest known upper bound per row plus a three-valued
// assignment of the booleans.  Meets are row-wise; closure (combining rows
// that cancel a variable) is NOT maintained eagerly -- closure_step performs
// one propagation pass on demand.
//
// Every row has its negation adjacent in the template (ids r and r^1), which
// makes complementation, emptiness detection and range queries row-local:
//   lower bound of row expression e  ==  -upper_bound(-e).
//
// Width information is implicit: bound queries clamp to the range the
// variable widths allow, so ⊤ concretises to the finite width box and
// midpoint decisions are always well defined.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "acdl/expr.h"
#include "acdl/ints.h"

namespace acdl {

//=============================================================================
// Template
//=============================================================================

enum class TemplateKind { kInterval, kZone, kOctagon, kEquality, kPoly };

struct TemplateRow {
  // (variable, coefficient) terms, sorted by variable id; coefficients are
  // nonzero and, for the named instances, in {-1, +1}.
  std::vector<std::pair<int, int>> terms;
};

class Template {
 public:
  const std::vector<TemplateRow>& rows() const { return rows_; }
  int row_count() const { return static_cast<int>(rows_.size()); }
  const TemplateRow& row(int r) const { return rows_[r]; }
  int neg(int r) const { return r ^ 1; }

  // Row id whose terms equal `terms` (sorted, nonzero coeffs), or -1.
  int find(const std::vector<std::pair<int, int>>& terms) const {
    auto it = index_.find(terms);
    return it == index_.end() ? -1 : it->second;
  }
  // Unary row +v / -v, or -1 if v has no unary rows in this template.
  int unary_pos(int v) const {
    return v < static_cast<int>(upos_.size()) ? upos_[v] : -1;
  }
  // All rows mentioning v.
  const std::vector<int>& rows_of(int v) const {
    static const std::vector<int> kEmpty;
    return v < static_cast<int>(by_var_.size()) ? by_var_[v] : kEmpty;
  }
  // Largest value the row expression can take within variable widths.
  Bound width_ub(int r) const { return wub_[r]; }

  const VarTable* vars = nullptr;

 private:
  friend Template make_template(const VarTable& vt, TemplateKind kind,
                                const std::vector<TemplateRow>& poly_rows);
  void add_row_pair(TemplateRow pos);
  void finish(const VarTable& vt);

  std::vector<TemplateRow> rows_;
  std::vector<Bound> wub_;
  std::map<std::vector<std::pair<int, int>>, int> index_;
  std::vector<int> upos_;
  std::vector<std::vector<int>> by_var_;
};

// Builds the template over the numeric variables of vt.
//   interval: rows ±v                 (2N)
//   zone:     ±v and xi - xj          (2N + N(N-1))
//   octagon:  ±v and ±xi ± xj         (2N^2)
//   equality: xi - xj only            (N(N-1))
//   poly:     the given rows plus their negations (each row may use any
//             integer coefficients); throws if a row mentions a boolean or
//             unknown variable.
Template make_template(const VarTable& vt, TemplateKind kind,
                       const std::vector<TemplateRow>& poly_rows = {});

//=============================================================================
// Meet irreducibles and abstract values
//=============================================================================

// One template inequality (row expression <= d) or one boolean literal.
struct MeetIrreducible {
  bool is_bool = false;
  int row = -1;
  Bound d = 0;
  int bvar = -1;
  bool val = false;

  static MeetIrreducible numeric(int row, Bound d) {
    MeetIrreducible m;
    m.row = row;
    m.d = d;
    return m;
  }
  static MeetIrreducible boolean(int bvar, bool val) {
    MeetIrreducible m;
    m.is_bool = true;
    m.bvar = bvar;
    m.val = val;
    return m;
  }
};

enum class MeetResult { kNoChange, kTightened, kBottom };

class AbstractValue {
 public:
  AbstractValue() = default;
  AbstractValue(const Template& tpl, const VarTable& vt)
      : tpl_(&tpl),
        ub_(tpl.row_count(), kPosInf),
        bools_(vt.size(), -1) {}

  const Template& tpl() const { return *tpl_; }
  bool is_bottom() const { return bottom_; }
  void set_bottom() { bottom_ = true; }

  // Stored upper bound for row r (kPosInf when the row is untouched).
  Bound raw_ub(int r) const { return ub_[r]; }
  // Upper bound clamped to what the variable widths allow.
  Bound ub(int r) const { return std::min(ub_[r], tpl_->width_ub(r)); }
  // Lower bound of the row expression, via the negated row.
  Bound lb(int r) const { return neg_bound(ub(tpl_->neg(r))); }

  // Effective interval of variable v (width box when no unary rows exist).
  Bound var_lb(int v) const;
  Bound var_ub(int v) const;

  // -1 unknown, 0 false, 1 true.
  int bool_value(int v) const { return bools_[v]; }

  MeetResult meet_row(int r, Bound d);
  MeetResult meet_bool(int v, bool val);
  MeetResult meet(const MeetIrreducible& m) {
    return m.is_bool ? meet_bool(m.bvar, m.val) : meet_row(m.row, m.d);
  }

  bool entails(const MeetIrreducible& m) const {
    if (m.is_bool) return bools_[m.bvar] == (m.val ? 1 : 0);
    return ub(m.row) <= m.d;
  }

  // Undo support: restores a bound without emptiness checks.
  void restore_row(int r, Bound d) { ub_[r] = d; }
  void restore_bool(int v, int b) { bools_[v] = b; }
  void clear_bottom() { bottom_ = false; }

  bool is_singleton(int v) const;
  // The single value of v; only meaningful when is_singleton(v).
  Bound singleton_value(int v) const;

  std::string to_string() const;

 private:
  const Template* tpl_ = nullptr;
  std::vector<Bound> ub_;
  std::vector<int8_t> bools_;
  bool bottom_ = false;
};

// Pointwise meet of two values over the same template.
AbstractValue meet(const AbstractValue& a, const AbstractValue& b);

// entails(a, m): does every concretisation of a satisfy m?
inline bool entails(const AbstractValue& a, const MeetIrreducible& m) {
  return a.entails(m);
}

// Precise integer complement: ¬(e <= d) == (-e <= -d-1); booleans flip.
MeetIrreducible complement(const MeetIrreducible& m);

// Meet decomposition: the informative constraints of a (stored row bounds
// strictly below the width bound, plus assigned booleans).  a == meet of the
// result (over ⊤), and each element is meet-irreducible.
std::vector<MeetIrreducible> decomp(const AbstractValue& a);

// One closure propagation: combines pairs of rows that cancel a variable
// (difference chains, unary sums into binary rows, same-variable pair
// tightening with floor division).  Restricted to combinations touching
// `dirty` when nonempty; deposits only into rows enabled by `allowed` when
// given.  Records every tightening (including the one that hit bottom) with
// the two source rows it came from.  Returns false if the value became
// bottom.
struct ClosureDelta {
  int row;
  Bound d;
  Bound prev;      // stored bound of row before the tightening
  int src1, src2;  // source row ids
};
bool closure_step(AbstractValue& a, const std::vector<int>& dirty,
                  std::vector<ClosureDelta>* deltas,
                  const std::vector<char>* allowed = nullptr);

std::string to_string(const MeetIrreducible& m, const Template& tpl,
                      const VarTable& vt);

}  // namespace acdl
