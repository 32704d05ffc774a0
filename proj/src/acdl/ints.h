// acdlv -- bounded safety checking with conflict-driven abstract learning.
// SPDX-License-Identifier: MIT
//
// Saturating 64-bit bound arithmetic.  Template-row bounds live in int64_t
// with the extreme values acting as +/- infinity.  All program values fit
// comfortably (widths are capped at 32 bits, so even a full-width product
// is at most 2^62), but sums of bounds must saturate rather than wrap.

#pragma once

#include <cstdint>
#include <limits>

namespace acdl {

using Bound = int64_t;

constexpr Bound kPosInf = std::numeric_limits<int64_t>::max();
constexpr Bound kNegInf = std::numeric_limits<int64_t>::min();

inline bool is_finite(Bound b) { return b != kPosInf && b != kNegInf; }

// a + b with infinities absorbing.  (+inf) + (-inf) never occurs in well-formed
// bound computations; we make it +inf (the weaker bound) to stay sound anyway.
inline Bound add_bound(Bound a, Bound b) {
  if (a == kPosInf || b == kPosInf) return kPosInf;
  if (a == kNegInf || b == kNegInf) return kNegInf;
  // Finite operands are far from the representable edge; plain add is safe
  // for |values| <= 2^62, which row arithmetic guarantees, but saturate anyway.
  if (a > 0 && b > kPosInf - a - 1) return kPosInf - 1;
  if (a < 0 && b < kNegInf - a + 1) return kNegInf + 1;
  return a + b;
}

inline Bound neg_bound(Bound a) {
  if (a == kPosInf) return kNegInf;
  if (a == kNegInf) return kPosInf;
  return -a;
}

// Exact product with infinities; 0 * inf = 0 (products of bounds only feed
// interval hulls, where the zero endpoint is exact).
inline Bound mul_bound(Bound a, Bound b) {
  if (a == 0 || b == 0) return 0;
  bool pos = (a > 0) == (b > 0);
  if (!is_finite(a) || !is_finite(b)) return pos ? kPosInf : kNegInf;
  // |a|,|b| <= 2^31 in all callers (operand ranges are width-clamped before
  // multiplying), so the product fits; saturate defensively regardless.
  __int128 p = static_cast<__int128>(a) * b;
  if (p >= static_cast<__int128>(kPosInf)) return kPosInf - 1;
  if (p <= static_cast<__int128>(kNegInf)) return kNegInf + 1;
  return static_cast<Bound>(p);
}

// Floor division by a positive constant, infinity-preserving.
inline Bound div_floor(Bound a, Bound d) {
  if (!is_finite(a)) return a;
  Bound q = a / d, r = a % d;
  return (r != 0 && (r < 0) != (d < 0)) ? q - 1 : q;
}

// Ceiling division by a positive constant, infinity-preserving.
inline Bound div_ceil(Bound a, Bound d) {
  if (!is_finite(a)) return a;
  Bound q = a / d, r = a % d;
  return (r != 0 && (r < 0) == (d < 0)) ? q + 1 : q;
}

}  // namespace acdl
