#pragma once

// Exact integer spectra of 2x2 and 3x3 integer matrices, and verifiers that
// check every distinct arrangement of a coefficient multiset.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "pythperm/checked.hpp"
#include "pythperm/families.hpp"
#include "pythperm/triples.hpp"

namespace pythperm {

/// floor(sqrt(n)) for n >= 0, by integer Newton iteration.
inline Int isqrt(Int n) {
  if (n < 0) throw ParameterError("isqrt of negative value " + std::to_string(n));
  if (n < 2) return n;
  using U = unsigned long long;
  const U un = static_cast<U>(n);
  const int bits = 64 - __builtin_clzll(un);
  U x = U{1} << ((bits + 1) / 2);  // x >= sqrt(n)
  for (;;) {
    const U y = (x + un / x) / 2;
    if (y >= x) break;
    x = y;
  }
  return static_cast<Int>(x);
}

/// Integer root of n when n is a perfect square; negative n has none.
inline std::optional<Int> is_perfect_square(Int n) {
  if (n < 0) return std::nullopt;
  const Int root = isqrt(n);
  if (root * root == n) return root;
  return std::nullopt;
}

/// (a b; c d).
struct Matrix2 {
  Int a = 0;
  Int b = 0;
  Int c = 0;
  Int d = 0;

  friend auto operator<=>(const Matrix2&, const Matrix2&) = default;

  Int trace() const { return checked::add(a, d); }
  Int det() const { return checked::sub(checked::mul(a, d), checked::mul(b, c)); }
  /// (a+d)^2 - 4(ad-bc), evaluated as (a-d)^2 + 4bc.
  Int discriminant() const {
    return checked::add(checked::square(checked::sub(a, d)), checked::mul(4, b, c));
  }

  std::array<Int, 4> entries() const { return {a, b, c, d}; }
  std::string str() const {
    return "(" + std::to_string(a) + " " + std::to_string(b) + "; " + std::to_string(c) + " " +
           std::to_string(d) + ")";
  }
};

/// Integer eigenvalues with plus >= minus.
struct EigenPair {
  Int plus = 0;
  Int minus = 0;

  static EigenPair of(Int x, Int y) { return x >= y ? EigenPair{x, y} : EigenPair{y, x}; }
  friend auto operator<=>(const EigenPair&, const EigenPair&) = default;
  std::string str() const { return "{" + std::to_string(plus) + "," + std::to_string(minus) + "}"; }
};

enum class Verdict {
  integer,     // discriminant is a perfect square
  irrational,  // positive, not a square
  complex,     // negative discriminant
};

inline const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::integer: return "integer";
    case Verdict::irrational: return "irrational";
    case Verdict::complex: return "complex";
  }
  return "?";
}

struct Spectrum2 {
  Verdict verdict = Verdict::irrational;
  Int discriminant = 0;
  std::optional<EigenPair> eigenvalues;
};

inline Spectrum2 analyze_2x2(const Matrix2& m) {
  Spectrum2 out;
  out.discriminant = m.discriminant();
  if (out.discriminant < 0) {
    out.verdict = Verdict::complex;
    return out;
  }
  const auto root = is_perfect_square(out.discriminant);
  if (!root) {
    out.verdict = Verdict::irrational;
    return out;
  }
  const Int trace = m.trace();
  // The root always shares the parity of the trace: u^2 = tr^2 - 4 det.
  if ((*root - trace) % 2 != 0) throw std::logic_error("discriminant root parity mismatch for " + m.str());
  out.verdict = Verdict::integer;
  out.eigenvalues = EigenPair{checked::add(trace, *root) / 2, checked::sub(trace, *root) / 2};
  return out;
}

inline std::optional<EigenPair> eigenvalues_2x2(const Matrix2& m) { return analyze_2x2(m).eigenvalues; }

/// The six conditions u..z; `root[i]` is present iff `value[i]` is a perfect square.
struct DiscriminantSet {
  std::array<Int, 6> value{};
  std::array<std::optional<Int>, 6> root{};

  const std::optional<Int>& u() const noexcept { return root[0]; }
  const std::optional<Int>& v() const noexcept { return root[1]; }
  const std::optional<Int>& w() const noexcept { return root[2]; }
  const std::optional<Int>& x() const noexcept { return root[3]; }
  const std::optional<Int>& y() const noexcept { return root[4]; }
  const std::optional<Int>& z() const noexcept { return root[5]; }

  bool all_square() const noexcept {
    return std::all_of(root.begin(), root.end(), [](const auto& r) { return r.has_value(); });
  }
};

/// The six arrangements whose spectra stand for all 24: one per ordered
/// choice of diagonal pair and off-diagonal pair. Index i has discriminant
/// `discriminants(...).value[i]`.
inline std::array<Matrix2, 6> representatives(const std::array<Int, 4>& q) {
  const auto [a, b, c, d] = q;
  return {Matrix2{a, b, c, d}, Matrix2{b, a, d, c}, Matrix2{a, d, c, b},
          Matrix2{d, a, b, c}, Matrix2{a, b, d, c}, Matrix2{b, a, c, d}};
}

inline DiscriminantSet discriminants(const std::array<Int, 4>& q) {
  const auto [a, b, c, d] = q;
  // (diag1 - diag2)^2 + 4 * off1 * off2 for each diagonal/off-diagonal split.
  const auto cond = [](Int p, Int q2, Int x, Int y) {
    return checked::add(checked::square(checked::sub(p, q2)), checked::mul(4, x, y));
  };
  DiscriminantSet out;
  out.value = {cond(a, d, b, c), cond(b, c, a, d), cond(a, b, c, d),
               cond(c, d, a, b), cond(a, c, b, d), cond(b, d, a, c)};
  for (std::size_t i = 0; i < 6; ++i) out.root[i] = is_perfect_square(out.value[i]);
  return out;
}

inline DiscriminantSet discriminants(const CoefficientQuad& q) { return discriminants(q.v); }

/// Eigenvalue classes of the six representative arrangements of the general
/// solution: {(t +- (r+s))/2}, {(t +- (r-s))/2}, {t, k}, {t, -k}, {t, l}, {t, -l}.
inline std::array<EigenPair, 6> predicted_eigenvalues(const PythTriple& triple, const FactorPair& factors) {
  // Throws unless the solution is integral; k and l are then integers too.
  const CoefficientQuad quad = general_solution(triple, factors);
  const Int k = checked::sub(quad.b(), quad.d());
  const Int l = checked::sub(quad.a(), quad.b());
  const Int t = triple.t;
  const Int sum = checked::add(triple.r, triple.s);
  const Int diff = checked::sub(triple.r, triple.s);
  return {EigenPair::of(checked::add(t, sum) / 2, checked::sub(t, sum) / 2),
          EigenPair::of(checked::add(t, diff) / 2, checked::sub(t, diff) / 2),
          EigenPair::of(t, k),
          EigenPair::of(t, checked::neg(k)),
          EigenPair::of(t, l),
          EigenPair::of(t, checked::neg(l))};
}

/// One arrangement inside an `EigenReport`.
struct Arrangement {
  Matrix2 matrix;
  Verdict verdict = Verdict::irrational;
  std::optional<EigenPair> eigenvalues;
  /// Arrangements related by a<->d and/or b<->c swaps share a class and a spectrum.
  std::size_t swap_class = 0;
};

struct EigenReport {
  std::array<Int, 4> multiset{};
  std::vector<Arrangement> arrangements;
  std::size_t swap_classes = 0;
  bool all_pass = false;
  std::optional<std::size_t> first_failure;
};

/// Number of distinct orderings of a multiset: n! / prod(multiplicity!).
template <typename T>
std::uint64_t distinct_permutation_count(std::span<const T> values) {
  std::vector<T> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t out = 1;
  std::uint64_t run = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    run = (i > 0 && sorted[i] == sorted[i - 1]) ? run + 1 : 1;
    // Build n!/prod(m!) incrementally as a product of binomials, exact at each step.
    out = out * (i + 1) / run;
  }
  return out;
}

inline EigenReport verify_all_permutations(const std::array<Int, 4>& coefficients) {
  EigenReport report;
  report.multiset = coefficients;
  std::sort(report.multiset.begin(), report.multiset.end());

  std::map<std::pair<std::pair<Int, Int>, std::pair<Int, Int>>, std::size_t> classes;
  auto arrangement = report.multiset;
  report.all_pass = true;
  do {
    const auto [a, b, c, d] = arrangement;
    const Matrix2 m{a, b, c, d};
    const auto key = std::pair(std::minmax(a, d), std::minmax(b, c));
    const auto [it, fresh] = classes.try_emplace(key, classes.size());
    (void)fresh;
    const Spectrum2 spec = analyze_2x2(m);
    report.arrangements.push_back({m, spec.verdict, spec.eigenvalues, it->second});
    if (spec.verdict != Verdict::integer && report.all_pass) {
      report.all_pass = false;
      report.first_failure = report.arrangements.size() - 1;
    }
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  report.swap_classes = classes.size();
  return report;
}

inline EigenReport verify_all_permutations(const CoefficientQuad& q) { return verify_all_permutations(q.v); }

// ---------------------------------------------------------------------------
// 3x3

/// Row-major 3x3 matrix.
using Matrix3 = std::array<Int, 9>;

/// Coefficients of det(lambda I - M) = lambda^3 - trace lambda^2 + second lambda - det.
struct CharPoly3 {
  Int trace = 0;
  Int second = 0;
  Int det = 0;

  friend auto operator<=>(const CharPoly3&, const CharPoly3&) = default;
};

inline CharPoly3 characteristic(const Matrix3& m) {
  using namespace checked;
  const auto minor = [&](std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
    return sub(mul(m[p], m[s]), mul(m[q], m[r]));
  };
  CharPoly3 out;
  out.trace = add(m[0], m[4], m[8]);
  out.second = add(minor(0, 1, 3, 4), minor(0, 2, 6, 8), minor(4, 5, 7, 8));
  out.det = add(sub(mul(m[0], minor(4, 5, 7, 8)), mul(m[1], minor(3, 5, 6, 8))), mul(m[2], minor(3, 4, 6, 7)));
  return out;
}

namespace detail {

inline __int128 mul128(__int128 x, __int128 y) {
  __int128 out;
  if (__builtin_mul_overflow(x, y, &out)) throw OverflowError("128-bit overflow evaluating cubic");
  return out;
}

inline __int128 add128(__int128 x, __int128 y) {
  __int128 out;
  if (__builtin_add_overflow(x, y, &out)) throw OverflowError("128-bit overflow evaluating cubic");
  return out;
}

/// Smallest x >= 0 with x^3 >= n, for n >= 0.
inline Int icbrt_ceil(Int n) {
  Int lo = 0;
  Int hi = 2097152;  // 2^21, and (2^21)^3 = 2^63 > INT64_MAX
  while (lo < hi) {
    const Int mid = lo + (hi - lo) / 2;
    if (static_cast<__int128>(mid) * mid * mid >= n) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

inline Int isqrt_ceil(Int n) {
  const Int r = isqrt(n);
  return r * r == n ? r : r + 1;
}

/// Roots of lambda^2 - trace lambda + det over the integers, larger first.
inline std::optional<std::pair<Int, Int>> integer_roots_quadratic(__int128 trace, __int128 det) {
  const __int128 disc = add128(mul128(trace, trace), mul128(-4, det));
  if (disc < 0 || disc > INT64_MAX) {
    if (disc < 0) return std::nullopt;
    throw OverflowError("quadratic discriminant exceeds 64 bits");
  }
  const auto root = is_perfect_square(static_cast<Int>(disc));
  if (!root) return std::nullopt;
  return std::pair(checked::narrow((trace + *root) / 2), checked::narrow((trace - *root) / 2));
}

}  // namespace detail

/// Integer roots (descending) of lambda^3 - trace lambda^2 + second lambda - det,
/// when all three are integers.
///
/// Candidate roots are the divisors of det, restricted to the Fujiwara bound
/// 2 max(|trace|, |second|^(1/2), |det/2|^(1/3)). det = 0 factors out lambda.
inline std::optional<std::array<Int, 3>> integer_roots_cubic(Int trace, Int second, Int det) {
  const auto finish = [](Int root, std::pair<Int, Int> rest) {
    std::array<Int, 3> out{root, rest.first, rest.second};
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
  };

  if (det == 0) {
    const auto rest = detail::integer_roots_quadratic(trace, second);
    if (!rest) return std::nullopt;
    return finish(0, *rest);
  }

  const Int abs_det = checked::abs(det);
  const Int bound = checked::mul(
      2, std::max({checked::abs(trace), detail::isqrt_ceil(checked::abs(second)),
                   detail::icbrt_ceil(abs_det / 2 + abs_det % 2)}));

  const auto eval = [&](Int x) {
    using detail::add128;
    using detail::mul128;
    __int128 acc = add128(x, -static_cast<__int128>(trace));
    acc = add128(mul128(acc, x), second);
    return add128(mul128(acc, x), -static_cast<__int128>(det));
  };
  // Any one integer root decides the answer: the quadratic cofactor either
  // splits over the integers or it does not.
  const auto deflate = [&](Int x) {
    // Synthetic division: lambda^2 + q1 lambda + q0.
    const __int128 q1 = static_cast<__int128>(x) - trace;
    const __int128 q0 = detail::add128(second, detail::mul128(x, q1));
    const auto rest = detail::integer_roots_quadratic(-q1, q0);
    return rest ? std::optional(finish(x, *rest)) : std::nullopt;
  };

  for (Int i = 1; i <= bound && i <= abs_det / i; ++i) {
    if (abs_det % i != 0) continue;
    for (Int candidate : {i, abs_det / i}) {
      if (candidate > bound) continue;
      for (Int x : {candidate, checked::neg(candidate)})
        if (eval(x) == 0) return deflate(x);
    }
  }
  return std::nullopt;
}

struct EigenReport3 {
  std::array<Int, 9> multiset{};
  bool all_pass = false;
  std::uint64_t distinct_arrangements = 0;
  std::uint64_t arrangements_checked = 0;
  std::optional<Matrix3> first_failure;
  /// Distinct spectra (descending roots) seen among passing arrangements, ascending.
  std::vector<std::array<Int, 3>> spectra;
};

inline EigenReport3 verify_all_permutations_3x3(const std::array<Int, 9>& coefficients) {
  EigenReport3 report;
  report.multiset = coefficients;
  std::sort(report.multiset.begin(), report.multiset.end());
  report.distinct_arrangements = distinct_permutation_count(std::span<const Int>(report.multiset));

  std::map<CharPoly3, std::optional<std::array<Int, 3>>> cache;
  Matrix3 m = report.multiset;
  report.all_pass = true;
  do {
    ++report.arrangements_checked;
    const CharPoly3 poly = characteristic(m);
    auto it = cache.find(poly);
    if (it == cache.end())
      it = cache.emplace(poly, integer_roots_cubic(poly.trace, poly.second, poly.det)).first;
    if (!it->second) {
      report.all_pass = false;
      report.first_failure = m;
      break;
    }
  } while (std::next_permutation(m.begin(), m.end()));

  for (const auto& [poly, roots] : cache)
    if (roots) report.spectra.push_back(*roots);
  std::sort(report.spectra.begin(), report.spectra.end());
  report.spectra.erase(std::unique(report.spectra.begin(), report.spectra.end()), report.spectra.end());
  return report;
}

}  // namespace pythperm
