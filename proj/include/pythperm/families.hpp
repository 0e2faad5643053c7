#pragma once

// Coefficient quadruples built from Pythagorean triples. Every family here
// produces four integers such that every arrangement of them as a 2x2 matrix
// has an integer spectrum.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pythperm/checked.hpp"
#include "pythperm/triples.hpp"

namespace pythperm {

/// Where a quadruple came from: family name plus its parameters, in order.
struct Provenance {
  std::string family;
  std::vector<std::pair<std::string, std::string>> params;
};

/// Four matrix coefficients in construction order (a, b, c, d).
///
/// Ansatz families lay the entries out so that a + d = b + c; `multiset()`
/// gives the order-free comparison key.
struct CoefficientQuad {
  std::array<Int, 4> v{};
  Provenance provenance;

  Int a() const noexcept { return v[0]; }
  Int b() const noexcept { return v[1]; }
  Int c() const noexcept { return v[2]; }
  Int d() const noexcept { return v[3]; }

  std::array<Int, 4> multiset() const {
    auto m = v;
    std::sort(m.begin(), m.end());
    return m;
  }

  /// The common sum t when a + d = b + c in construction order.
  std::optional<Int> ansatz_sum() const {
    const Int diag = checked::add(v[0], v[3]);
    return diag == checked::add(v[1], v[2]) ? std::optional<Int>(diag) : std::nullopt;
  }

  std::string str() const {
    return "{" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) +
           "," + std::to_string(v[3]) + "}";
  }
};

inline bool same_multiset(const CoefficientQuad& x, const CoefficientQuad& y) {
  return x.multiset() == y.multiset();
}

/// k = b - d and l = a - b of the general solution; k l must equal r s / 2.
struct FactorPair {
  Rational k;
  Rational l;
};

/// p/q with q > 0 and gcd(|p|, q) = 1.
struct RationalParam {
  Int p = 1;
  Int q = 1;

  void validate() const {
    if (p == 0) throw ParameterError("rational parameter p must be nonzero");
    if (q <= 0) throw ParameterError("rational parameter q must be positive, got " + std::to_string(q));
    if (gcd(p, q) != 1)
      throw ParameterError("rational parameter p/q must be reduced, got " + std::to_string(p) + "/" +
                           std::to_string(q));
  }
};

/// m nonzero, n odd, gcd(2m, n) = 1.
struct AltCanParams {
  Int m = 1;
  Int n = 1;

  void validate() const {
    if (m == 0) throw ParameterError("m must be nonzero");
    if (is_even(n)) throw ParameterError("n must be odd, got " + std::to_string(n));
    if (gcd(checked::mul(2, m), n) != 1)
      throw ParameterError("m and n must be coprime, got m=" + std::to_string(m) +
                           " n=" + std::to_string(n));
  }
};

namespace detail {

inline void require_triple(const PythTriple& p) {
  if (!is_valid(p)) throw ParameterError("not a Pythagorean triple: " + p.str());
}

inline std::vector<std::pair<std::string, std::string>> triple_params(const PythTriple& p) {
  return {{"r", std::to_string(p.r)}, {"s", std::to_string(p.s)}, {"t", std::to_string(p.t)}};
}

}  // namespace detail

/// {(t+k+l)/2, (t+k-l)/2, (t-k+l)/2, (t-k-l)/2}, so that a + d = b + c = t.
inline CoefficientQuad general_solution(const PythTriple& triple, const FactorPair& factors) {
  detail::require_triple(triple);
  const Rational half_rs(checked::mul(triple.r, triple.s), 2);
  if (!(factors.k * factors.l == half_rs))
    throw ConstraintError("k*l = " + (factors.k * factors.l).str() + " but r*s/2 = " + half_rs.str());

  const Rational t(triple.t);
  const Rational half(1, 2);
  const std::array<Rational, 4> entries{(t + factors.k + factors.l) * half,
                                        (t + factors.k - factors.l) * half,
                                        (t - factors.k + factors.l) * half,
                                        (t - factors.k - factors.l) * half};
  static constexpr std::array<const char*, 4> kNames{"a", "b", "c", "d"};

  CoefficientQuad out;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!entries[i].is_integer())
      throw IntegralityError(kNames[i], std::string("coefficient ") + kNames[i] + " = " +
                                            entries[i].str() + " is not an integer");
    out.v[i] = entries[i].num();
  }
  out.provenance.family = "general";
  out.provenance.params = detail::triple_params(triple);
  out.provenance.params.emplace_back("k", factors.k.str());
  out.provenance.params.emplace_back("l", factors.l.str());
  return out;
}

/// The general solution with k = r and l = s/2. Needs a normalized triple.
inline CoefficientQuad canonical(const PythTriple& triple) {
  detail::require_triple(triple);
  if (!is_normalized(triple))
    throw PreconditionError("canonical solution needs a normalized triple (s = 0 mod 4, r = t mod 2); "
                            "got " + triple.str() + ", normalize it first");
  auto out = general_solution(triple, {Rational(triple.r), Rational(triple.s / 2)});
  out.provenance = {"canonical", detail::triple_params(triple)};
  return out;
}

/// {4m^2 + mn, 4m^2 - mn, n^2 + mn, n^2 - mn}.
inline CoefficientQuad alt_canonical(const AltCanParams& params) {
  params.validate();
  const Int four_mm = checked::mul(4, params.m, params.m);
  const Int nn = checked::square(params.n);
  const Int mn = checked::mul(params.m, params.n);
  CoefficientQuad out;
  out.v = {checked::add(four_mm, mn), checked::sub(four_mm, mn), checked::add(nn, mn),
           checked::sub(nn, mn)};
  out.provenance = {"altcan", {{"m", std::to_string(params.m)}, {"n", std::to_string(params.n)}}};
  return out;
}

/// Closed form of "all alt_canonical entries are strictly positive".
inline bool positive_predicate(const AltCanParams& params) {
  params.validate();
  const Int m = checked::abs(params.m);
  const Int n = checked::abs(params.n);
  return checked::mul(4, m) > n && n > m;
}

/// The general solution with k = r s / 2 and l = 1. Needs odd t.
inline CoefficientQuad odd_t_solution(const PythTriple& triple) {
  detail::require_triple(triple);
  if (is_even(triple.t))
    throw ParameterError("odd-t family needs an odd hypotenuse, got t=" + std::to_string(triple.t));
  auto out = general_solution(triple, {Rational(checked::mul(triple.r, triple.s) / 2), Rational(1)});
  out.provenance = {"oddt", detail::triple_params(triple)};
  return out;
}

struct RationalFamilyResult {
  /// {pqt + p^2 + q^2 rs/2, pqt + p^2 - q^2 rs/2, pqt - p^2 + q^2 rs/2, pqt - p^2 - q^2 rs/2}.
  CoefficientQuad printed;
  /// `printed` divided by the gcd of its entries.
  CoefficientQuad reduced;
  Int divisor = 1;
};

/// The family {pqt +- p^2 +- q^2 rs/2} for k = p/q, l = q rs / (2p).
///
/// The closed form is 2pq times the rational general solution; `reduced`
/// removes the common factor again.
inline RationalFamilyResult rational_family(const PythTriple& triple, const RationalParam& param) {
  detail::require_triple(triple);
  param.validate();
  const Int rs = checked::mul(triple.r, triple.s);
  if (!is_even(rs)) throw ParameterError("r*s must be even for " + triple.str());

  const Int pqt = checked::mul(param.p, param.q, triple.t);
  const Int pp = checked::square(param.p);
  const Int tail = checked::mul(checked::square(param.q), rs / 2);

  RationalFamilyResult out;
  out.printed.v = {checked::add(pqt, pp, tail), checked::sub(checked::add(pqt, pp), tail),
                   checked::add(checked::sub(pqt, pp), tail), checked::sub(checked::sub(pqt, pp), tail)};
  out.printed.provenance = {"rational", detail::triple_params(triple)};
  out.printed.provenance.params.emplace_back("p", std::to_string(param.p));
  out.printed.provenance.params.emplace_back("q", std::to_string(param.q));

  Int g = 0;
  for (Int x : out.printed.v) g = gcd(g, x);
  out.divisor = g == 0 ? 1 : g;
  out.reduced = out.printed;
  for (Int& x : out.reduced.v) x /= out.divisor;
  out.reduced.provenance.family = "rational-reduced";
  return out;
}

/// {g e1^2, g e2^2, 0, 0}: the product of the nonzero entries is a square.
inline CoefficientQuad degenerate_family(Int g, Int e1, Int e2) {
  if (g == 0) throw ParameterError("degenerate family needs g != 0");
  if (e1 <= 0 || e2 <= 0) throw ParameterError("degenerate family needs e1, e2 >= 1");
  CoefficientQuad out;
  out.v = {checked::mul(g, e1, e1), checked::mul(g, e2, e2), 0, 0};
  out.provenance = {"degenerate",
                    {{"g", std::to_string(g)}, {"e1", std::to_string(e1)}, {"e2", std::to_string(e2)}}};
  return out;
}

/// Every entry multiplied by n.
inline CoefficientQuad scaled(const CoefficientQuad& q, Int n) {
  CoefficientQuad out = q;
  for (Int& x : out.v) x = checked::mul(x, n);
  return out;
}

}  // namespace pythperm
