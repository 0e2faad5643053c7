#pragma once

#include <algorithm>
#include <compare>
#include <ostream>
#include <string>
#include <vector>

#include "pythperm/checked.hpp"

namespace pythperm {

/// Integer right triangle: legs r, s and hypotenuse t with r^2 + s^2 = t^2.
///
/// Leg order is meaningful. After `normalize`, s is divisible by 4 and r has
/// the parity of t, which is the layout the canonical construction consumes.
struct PythTriple {
  Int r = 0;
  Int s = 0;
  Int t = 0;

  friend auto operator<=>(const PythTriple&, const PythTriple&) = default;

  Int min_leg() const noexcept { return std::min(r, s); }
  Int max_leg() const noexcept { return std::max(r, s); }

  std::string str() const {
    return "(" + std::to_string(r) + "," + std::to_string(s) + "," + std::to_string(t) + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const PythTriple& p) { return os << p.str(); }
};

/// Euclid parameters: r = (f^2 - g^2) h, s = 2 f g h, t = (f^2 + g^2) h.
struct EuclidParams {
  Int f = 0;
  Int g = 0;
  Int h = 1;

  /// Coprime with opposite parity, i.e. the triple for h = 1 is primitive.
  bool primitive() const noexcept { return gcd(f, g) == 1 && (f - g) % 2 != 0; }
};

/// True iff all three are positive and r^2 + s^2 = t^2. Never throws.
inline bool is_valid(Int r, Int s, Int t) noexcept {
  if (r <= 0 || s <= 0 || t <= 0) return false;
  __int128 rr = static_cast<__int128>(r) * r;
  __int128 ss = static_cast<__int128>(s) * s;
  __int128 tt = static_cast<__int128>(t) * t;
  // r, s, t < 2^63 so each square < 2^126 and the sum cannot wrap.
  return rr + ss == tt;
}

inline bool is_valid(const PythTriple& p) noexcept { return is_valid(p.r, p.s, p.t); }

inline bool is_primitive(const PythTriple& p) { return gcd(gcd(p.r, p.s), p.t) == 1; }

inline PythTriple from_params(const EuclidParams& e) {
  if (!(e.f > e.g && e.g >= 1))
    throw ParameterError("Euclid parameters need f > g >= 1, got f=" + std::to_string(e.f) +
                         " g=" + std::to_string(e.g));
  if (e.h < 1) throw ParameterError("Euclid common factor h must be >= 1, got " + std::to_string(e.h));
  const Int ff = checked::square(e.f);
  const Int gg = checked::square(e.g);
  return PythTriple{checked::mul(checked::sub(ff, gg), e.h), checked::mul(2, e.f, e.g, e.h),
                    checked::mul(checked::add(ff, gg), e.h)};
}

namespace detail {

inline int two_adic_valuation(Int x) noexcept {
  return x == 0 ? 64 : __builtin_ctzll(static_cast<unsigned long long>(x));
}

inline bool has_normal_layout(const PythTriple& p) noexcept {
  return p.s % 4 == 0 && (p.r - p.t) % 2 == 0;
}

}  // namespace detail

/// Result of `normalize`.
struct NormalizedTriple {
  /// Legs reordered so that s = 0 (mod 4) and r = t (mod 2).
  PythTriple triple;
  /// `triple` with every common factor of 2 divided out (still normalized).
  PythTriple reduced;
  /// Number of halvings between `triple` and `reduced`.
  int twos = 0;
};

/// Reorder the legs into the s = 0 (mod 4), r = t (mod 2) layout.
///
/// The leg with the larger 2-adic valuation becomes s; this is the even leg of
/// the underlying primitive triple, so the choice is stable under scaling and
/// unambiguous even when both legs are divisible by 4.
inline NormalizedTriple normalize(const PythTriple& in) {
  if (!is_valid(in)) throw ParameterError("not a Pythagorean triple: " + in.str());

  PythTriple p = in;
  if (detail::two_adic_valuation(p.r) > detail::two_adic_valuation(p.s)) std::swap(p.r, p.s);

  NormalizedTriple out;
  // Every valid triple reaches the layout above, but keep halving as the
  // contract states in case an ordering ever fails: a triple with no leg
  // divisible by 4 must have all components even.
  while (!detail::has_normal_layout(p)) {
    if (p.r % 2 != 0 || p.s % 2 != 0 || p.t % 2 != 0)
      throw ConstraintError("cannot normalize " + in.str());
    p = {p.r / 2, p.s / 2, p.t / 2};
    if (detail::two_adic_valuation(p.r) > detail::two_adic_valuation(p.s)) std::swap(p.r, p.s);
    ++out.twos;
  }
  out.triple = p;
  out.reduced = p;
  while (out.reduced.r % 2 == 0 && out.reduced.s % 2 == 0 && out.reduced.t % 2 == 0) {
    out.reduced = {out.reduced.r / 2, out.reduced.s / 2, out.reduced.t / 2};
    ++out.twos;
  }
  return out;
}

inline bool is_normalized(const PythTriple& p) noexcept {
  return is_valid(p) && detail::has_normal_layout(p);
}

/// Every triple with hypotenuse <= max_t, once each, ordered by t then by
/// the shorter leg. Legs are emitted in normalized order.
inline std::vector<PythTriple> enumerate(Int max_t, bool primitive_only) {
  std::vector<PythTriple> out;
  if (max_t < 5) return out;
  for (Int f = 2; checked::add(checked::square(f), 1) <= max_t; ++f) {
    for (Int g = 1; g < f; ++g) {
      const EuclidParams base{f, g, 1};
      if (!base.primitive()) continue;
      const PythTriple prim = from_params(base);
      if (prim.t > max_t) break;
      const Int max_h = primitive_only ? 1 : max_t / prim.t;
      for (Int h = 1; h <= max_h; ++h)
        out.push_back({checked::mul(prim.r, h), checked::mul(prim.s, h), checked::mul(prim.t, h)});
    }
  }
  std::sort(out.begin(), out.end(), [](const PythTriple& x, const PythTriple& y) {
    return std::pair(x.t, x.min_leg()) < std::pair(y.t, y.min_leg());
  });
  return out;
}

}  // namespace pythperm
