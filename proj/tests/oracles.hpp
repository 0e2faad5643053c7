#pragma once

// Brute-force reference implementations used only by the tests. None of these
// share code paths with the library: no discriminants, no Euclid parameters,
// no divisor scans.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <cstdlib>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

using Int = std::int64_t;

/// All (min leg, max leg, hypotenuse) with hypotenuse <= max_t, by double loop.
inline std::set<std::tuple<Int, Int, Int>> triples(Int max_t, bool primitive_only) {
  std::set<std::tuple<Int, Int, Int>> out;
  for (Int r = 1; r <= max_t; ++r)
    for (Int s = r; s <= max_t; ++s) {
      const Int tt = r * r + s * s;
      Int t = 1;
      while (t * t < tt) ++t;
      if (t * t != tt || t > max_t) continue;
      Int g = r;
      for (Int x : {s, t}) {
        Int a = g, b = x;
        while (b) {
          const Int tmp = a % b;
          a = b;
          b = tmp;
        }
        g = a;
      }
      if (primitive_only && g != 1) continue;
      out.emplace(r, s, t);
    }
  return out;
}

inline bool is_square_scan(Int n) {
  if (n < 0) return false;
  for (Int i = 0; i * i <= n; ++i)
    if (i * i == n) return true;
  return false;
}

/// Integer eigenvalues of (a b; c d) by scanning for integer roots of the
/// characteristic quadratic; |lambda| is bounded by the max absolute row sum.
inline std::optional<std::pair<Int, Int>> eigen2(Int a, Int b, Int c, Int d) {
  const Int bound = std::max(std::abs(a) + std::abs(b), std::abs(c) + std::abs(d));
  const Int tr = a + d;
  const Int det = a * d - b * c;
  for (Int lam = -bound; lam <= bound; ++lam) {
    if (lam * lam - tr * lam + det != 0) continue;
    const Int other = tr - lam;  // Vieta
    if (other * lam != det) continue;
    return std::pair(std::max(lam, other), std::min(lam, other));
  }
  return std::nullopt;
}

/// Every ordered assignment of the four entries (all 24, duplicates included).
inline bool all_arrangements_integer(std::array<Int, 4> q) {
  std::array<int, 4> idx{0, 1, 2, 3};
  do {
    if (!eigen2(q[idx[0]], q[idx[1]], q[idx[2]], q[idx[3]])) return false;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return true;
}

/// det(M - x I) by the 6-term Leibniz expansion.
inline Int det_shifted(const std::array<Int, 9>& m, Int x) {
  const Int a = m[0] - x, e = m[4] - x, i = m[8] - x;
  return a * e * i + m[1] * m[5] * m[6] + m[2] * m[3] * m[7] - m[2] * e * m[6] - m[1] * m[3] * i - a * m[5] * m[7];
}

/// Integer spectrum (descending) of a 3x3 matrix, if all three eigenvalues are
/// integers. Roots of det(M - x I) are scanned over the Gershgorin-style bound
/// and multiplicities counted through finite differences of the cubic.
inline std::optional<std::array<Int, 3>> eigen3(const std::array<Int, 9>& m) {
  Int bound = 0;
  for (int r = 0; r < 3; ++r) bound = std::max(bound, std::abs(m[3 * r]) + std::abs(m[3 * r + 1]) + std::abs(m[3 * r + 2]));
  // p(x) = -det(M - xI) = x^3 - c2 x^2 + c1 x - c0; recover c2, c1, c0 by
  // interpolation through x = 0, 1, 2.
  const Int p0 = -det_shifted(m, 0), p1 = -det_shifted(m, 1), p2 = -det_shifted(m, 2);
  // p(x) - x^3 is quadratic: q0 = p0, q1 = p1 - 1, q2 = p2 - 8.
  const Int q0 = p0, q1 = p1 - 1, q2 = p2 - 8;
  const Int A = (q2 - 2 * q1 + q0) / 2;  // coefficient of x^2
  const Int B = q1 - q0 - A;             // coefficient of x
  const Int C = q0;
  const auto p = [&](Int x) { return x * x * x + A * x * x + B * x + C; };
  const auto dp = [&](Int x) { return 3 * x * x + 2 * A * x + B; };
  const auto ddp = [&](Int x) { return 6 * x + 2 * A; };
  std::vector<Int> roots;
  for (Int x = -bound; x <= bound; ++x) {
    if (p(x) != 0) continue;
    int mult = 1;
    if (dp(x) == 0) mult = ddp(x) == 0 ? 3 : 2;
    for (int k = 0; k < mult; ++k) roots.push_back(x);
  }
  if (roots.size() != 3) return std::nullopt;
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return std::array<Int, 3>{roots[0], roots[1], roots[2]};
}

/// Every distinct placement of the nine entries (std::next_permutation over
/// the sorted values visits each distinct arrangement once).
inline bool all_arrangements_integer_3x3(std::array<Int, 9> m) {
  std::sort(m.begin(), m.end());
  do {
    if (!eigen3(m)) return false;
  } while (std::next_permutation(m.begin(), m.end()));
  return true;
}

/// Every ascending multiset of size k over [lo, hi], by nested counting.
inline std::vector<std::vector<Int>> multisets(Int lo, Int hi, std::size_t k) {
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur;
  const auto rec = [&](auto&& self, Int from) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (Int v = from; v <= hi; ++v) {
      cur.push_back(v);
      self(self, v);
      cur.pop_back();
    }
  };
  rec(rec, lo);
  return out;
}

}  // namespace oracle
