// acdlv -- bounded safety checking with conflict-driven abstract learning.
// SPDX-License-Identifier: MIT

#include "acdl/domain.h"

#include <algorithm>
#include <stdexcept>

namespace acdl {

//=============================================================================
// Template construction
//=============================================================================

void Template::add_row_pair(TemplateRow pos) {
  TemplateRow neg;
  for (auto [v, c] : pos.terms) neg.terms.emplace_back(v, -c);
  for (const TemplateRow* r : {&pos, &neg}) {
    if (index_.count(r->terms)) return;  // pair already present
  }
  index_[pos.terms] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(pos));
  index_[neg.terms] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(neg));
}

void Template::finish(const VarTable& vt) {
  vars = &vt;
  upos_.assign(vt.size(), -1);
  by_var_.assign(vt.size(), {});
  wub_.resize(rows_.size());
  for (int r = 0; r < row_count(); ++r) {
    Bound w = 0;
    for (auto [v, c] : rows_[r].terms) {
      w = add_bound(w, c > 0 ? mul_bound(c, vt.max_value(v))
                             : mul_bound(c, vt.min_value(v)));
      by_var_[v].push_back(r);
      if (rows_[r].terms.size() == 1 && c == 1) upos_[v] = r;
    }
    wub_[r] = w;
  }
}

Template make_template(const VarTable& vt, TemplateKind kind,
                       const std::vector<TemplateRow>& poly_rows) {
  Template t;
  std::vector<int> nums;
  for (int v = 0; v < vt.size(); ++v)
    if (!vt[v].is_bool) nums.push_back(v);

  auto unary = [&](int v) {
    TemplateRow r;
    r.terms = {{v, 1}};
    t.add_row_pair(std::move(r));
  };
  auto binary = [&](int a, int ca, int b, int cb) {
    TemplateRow r;
    r.terms = {{a, ca}, {b, cb}};
    if (a > b) std::swap(r.terms[0], r.terms[1]);
    t.add_row_pair(std::move(r));
  };

  switch (kind) {
    case TemplateKind::kInterval:
      for (int v : nums) unary(v);
      break;
    case TemplateKind::kZone:
      for (int v : nums) unary(v);
      for (size_t i = 0; i < nums.size(); ++i)
        for (size_t j = i + 1; j < nums.size(); ++j)
          binary(nums[i], 1, nums[j], -1);
      break;
    case TemplateKind::kOctagon:
      for (int v : nums) unary(v);
      for (size_t i = 0; i < nums.size(); ++i)
        for (size_t j = i + 1; j < nums.size(); ++j) {
          binary(nums[i], 1, nums[j], -1);
          binary(nums[i], 1, nums[j], 1);
        }
      break;
    case TemplateKind::kEquality:
      for (size_t i = 0; i < nums.size(); ++i)
        for (size_t j = i + 1; j < nums.size(); ++j)
          binary(nums[i], 1, nums[j], -1);
      break;
    case TemplateKind::kPoly:
      for (TemplateRow r : poly_rows) {
        if (r.terms.empty())
          throw std::invalid_argument("poly template: empty row");
        std::sort(r.terms.begin(), r.terms.end());
        for (auto [v, c] : r.terms) {
          if (v < 0 || v >= vt.size() || vt[v].is_bool || c == 0)
            throw std::invalid_argument(
                "poly template: row mentions an invalid variable");
        }
        t.add_row_pair(std::move(r));
      }
      break;
  }
  t.finish(vt);
  return t;
}

//=============================================================================
// AbstractValue
//=============================================================================

Bound AbstractValue::var_ub(int v) const {
  int r = tpl_->unary_pos(v);
  return r >= 0 ? ub(r) : tpl_->vars->max_value(v);
}

Bound AbstractValue::var_lb(int v) const {
  int r = tpl_->unary_pos(v);
  return r >= 0 ? lb(r) : tpl_->vars->min_value(v);
}

MeetResult AbstractValue::meet_row(int r, Bound d) {
  if (d >= ub_[r]) return MeetResult::kNoChange;
  Bound eff = std::min(d, tpl_->width_ub(r));
  if (eff >= ub(r)) {
    // Tighter than stored but not tighter than the width clamp: remember it
    // anyway so decomposition stays meet-normalised, but report no change.
    ub_[r] = d;
    return MeetResult::kNoChange;
  }
  ub_[r] = d;
  if (lb(r) > eff) {
    bottom_ = true;
    return MeetResult::kBottom;
  }
  return MeetResult::kTightened;
}

MeetResult AbstractValue::meet_bool(int v, bool val) {
  int8_t want = val ? 1 : 0;
  if (bools_[v] == want) return MeetResult::kNoChange;
  if (bools_[v] != -1) {
    bottom_ = true;
    return MeetResult::kBottom;
  }
  bools_[v] = want;
  return MeetResult::kTightened;
}

bool AbstractValue::is_singleton(int v) const {
  if (tpl_->vars->operator[](v).is_bool) return bools_[v] != -1;
  Bound lo = var_lb(v), hi = var_ub(v);
  return lo == hi && is_finite(lo);
}

Bound AbstractValue::singleton_value(int v) const {
  if (tpl_->vars->operator[](v).is_bool) return bools_[v] == 1 ? 1 : 0;
  return var_lb(v);
}

std::string AbstractValue::to_string() const {
  if (bottom_) return "<bottom>";
  std::string out;
  for (const auto& m : decomp(*this)) {
    if (!out.empty()) out += " /\\ ";
    out += acdl::to_string(m, *tpl_, *tpl_->vars);
  }
  return out.empty() ? "<top>" : out;
}

AbstractValue meet(const AbstractValue& a, const AbstractValue& b) {
  if (&a.tpl() != &b.tpl())
    throw std::invalid_argument("meet: template mismatch");
  AbstractValue out = a;
  if (b.is_bottom()) out.set_bottom();
  if (out.is_bottom()) return out;
  for (int r = 0; r < a.tpl().row_count(); ++r)
    if (out.meet_row(r, b.raw_ub(r)) == MeetResult::kBottom) return out;
  for (int v = 0; v < a.tpl().vars->size(); ++v) {
    int bv = b.bool_value(v);
    if (bv != -1 && out.meet_bool(v, bv == 1) == MeetResult::kBottom) return out;
  }
  return out;
}

MeetIrreducible complement(const MeetIrreducible& m) {
  if (m.is_bool) return MeetIrreducible::boolean(m.bvar, !m.val);
  MeetIrreducible out;
  out.row = m.row ^ 1;
  out.d = add_bound(neg_bound(m.d), -1);
  return out;
}

std::vector<MeetIrreducible> decomp(const AbstractValue& a) {
  std::vector<MeetIrreducible> out;
  if (a.is_bottom()) return out;
  const Template& t = a.tpl();
  for (int r = 0; r < t.row_count(); ++r)
    if (a.raw_ub(r) < t.width_ub(r))
      out.push_back(MeetIrreducible::numeric(r, a.raw_ub(r)));
  for (int v = 0; v < t.vars->size(); ++v)
    if (a.bool_value(v) != -1)
      out.push_back(MeetIrreducible::boolean(v, a.bool_value(v) == 1));
  return out;
}

//=============================================================================
// One-pass closure
//=============================================================================

namespace {

// Adds the term lists of two rows; returns false if any coefficient leaves
// {-2,-1,1,2} (no template row can match it).
bool add_terms(const TemplateRow& a, const TemplateRow& b,
               std::vector<std::pair<int, int>>& out) {
  out.clear();
  size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j >= b.terms.size() ||
        (i < a.terms.size() && a.terms[i].first < b.terms[j].first)) {
      out.push_back(a.terms[i++]);
    } else if (i >= a.terms.size() || b.terms[j].first < a.terms[i].first) {
      out.push_back(b.terms[j++]);
    } else {
      int c = a.terms[i].second + b.terms[j].second;
      if (c != 0) out.emplace_back(a.terms[i].first, c);
      ++i, ++j;
    }
  }
  for (auto [v, c] : out)
    if (c < -2 || c > 2 || c == 0) return false;
  return true;
}

}  // namespace

bool closure_step(AbstractValue& a, const std::vector<int>& dirty,
                  std::vector<ClosureDelta>* deltas,
                  const std::vector<char>* allowed) {
  if (a.is_bottom()) return false;
  const Template& t = a.tpl();

  // Row set to start combinations from: rows touching a dirty variable, or
  // all rows when no dirty set is given.
  std::vector<int> starts;
  if (dirty.empty()) {
    starts.resize(t.row_count());
    for (int r = 0; r < t.row_count(); ++r) starts[r] = r;
  } else {
    std::vector<char> seen(t.row_count(), 0);
    for (int v : dirty)
      for (int r : t.rows_of(v))
        if (!seen[r]) {
          seen[r] = 1;
          starts.push_back(r);
        }
  }

  auto informative = [&](int r) { return a.raw_ub(r) < t.width_ub(r); };

  std::vector<std::pair<int, int>> sum;
  auto combine = [&](int r1, int r2) -> bool {
    // At least one side must carry real information, else the result cannot
    // beat the width clamp.
    if (!informative(r1) && !informative(r2)) return true;
    if (!add_terms(t.row(r1), t.row(r2), sum)) return true;
    Bound d = add_bound(a.ub(r1), a.ub(r2));
    if (!is_finite(d)) return true;
    if (sum.empty()) return true;  // r2 == neg(r1); emptiness is row-local
    int target = t.find(sum);
    if (target < 0) {
      // 2*(row expression) <= d tightens to floor(d/2); sound only when the
      // WHOLE sum is divisible by 2, e.g. (x+y) + (x-y) = 2x.
      bool all_doubled = true;
      for (auto [v, c] : sum)
        if (c != 2 && c != -2) all_doubled = false;
      if (!all_doubled) return true;
      for (auto& [v, c] : sum) c /= 2;
      target = t.find(sum);
      if (target < 0) return true;
      d = div_floor(d, 2);
    }
    if (allowed && !(*allowed)[target]) return true;
    Bound before = a.ub(target);
    MeetResult res = a.meet_row(target, d);
    if (res == MeetResult::kTightened || res == MeetResult::kBottom) {
      if (deltas && a.ub(target) < before)
        deltas->push_back({target, d, r1, r2});
    }
    return res != MeetResult::kBottom;
  };

  for (int r1 : starts) {
    // Combine with every row that cancels one of r1's variables...
    for (auto [v, c] : t.row(r1).terms) {
      for (int r2 : t.rows_of(v)) {
        if (r2 == t.neg(r1)) continue;
        bool cancels = false;
        for (auto [v2, c2] : t.row(r2).terms)
          if (v2 == v && c2 == -c) cancels = true;
        if (!cancels) continue;
        if (!combine(r1, r2)) return false;
      }
    }
    // ...and, for binary rows, refresh from the two unary rows.
    if (t.row(r1).terms.size() == 2) {
      auto [v1, c1] = t.row(r1).terms[0];
      auto [v2, c2] = t.row(r1).terms[1];
      int u1 = t.unary_pos(v1), u2 = t.unary_pos(v2);
      if (u1 >= 0 && u2 >= 0) {
        if (c1 < 0) u1 = t.neg(u1);
        if (c2 < 0) u2 = t.neg(u2);
        if (!combine(u1, u2)) return false;
      }
    }
    // Same-variable pair tightening, e.g. (x+y<=d1) + (x-y<=d2) -> x<=...,
    // is covered by the cancellation loop above (y cancels, sum = 2x).
  }
  return !a.is_bottom();
}

//=============================================================================
// Printing
//=============================================================================

std::string to_string(const MeetIrreducible& m, const Template& tpl,
                      const VarTable& vt) {
  if (m.is_bool)
    return vt[m.bvar].name + " = " + (m.val ? "true" : "false");
  std::string out;
  bool first = true;
  for (auto [v, c] : tpl.row(m.row).terms) {
    if (!first) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    first = false;
    if (c != 1 && c != -1) out += std::to_string(c < 0 ? -c : c) + "*";
    out += vt[v].name;
  }
  out += " <= " + std::to_string(m.d);
  return out;
}

}  // namespace acdl
