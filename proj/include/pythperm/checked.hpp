#pragma once

// Exact 64-bit integer arithmetic that throws instead of wrapping, plus a
// small reduced-fraction type for the rational factor pairs.

#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>

#include "pythperm/errors.hpp"

namespace pythperm {

using Int = std::int64_t;

namespace checked {

inline Int add(Int x, Int y) {
  Int out;
  if (__builtin_add_overflow(x, y, &out))
    throw OverflowError("integer overflow in " + std::to_string(x) + " + " + std::to_string(y));
  return out;
}

inline Int sub(Int x, Int y) {
  Int out;
  if (__builtin_sub_overflow(x, y, &out))
    throw OverflowError("integer overflow in " + std::to_string(x) + " - " + std::to_string(y));
  return out;
}

inline Int mul(Int x, Int y) {
  Int out;
  if (__builtin_mul_overflow(x, y, &out))
    throw OverflowError("integer overflow in " + std::to_string(x) + " * " + std::to_string(y));
  return out;
}

inline Int neg(Int x) { return sub(0, x); }

inline Int square(Int x) { return mul(x, x); }

inline Int abs(Int x) { return x < 0 ? neg(x) : x; }

template <typename... Rest>
Int add(Int x, Int y, Rest... rest) {
  return add(add(x, y), rest...);
}

template <typename... Rest>
Int mul(Int x, Int y, Rest... rest) {
  return mul(mul(x, y), rest...);
}

/// Narrow a 128-bit intermediate, throwing if it does not fit.
inline Int narrow(__int128 x) {
  if (x > INT64_MAX || x < INT64_MIN) throw OverflowError("integer overflow narrowing 128-bit value");
  return static_cast<Int>(x);
}

}  // namespace checked

/// Non-negative gcd; gcd(0, 0) = 0.
inline Int gcd(Int x, Int y) {
  return std::gcd(checked::abs(x), checked::abs(y));
}

inline bool is_even(Int x) noexcept { return x % 2 == 0; }

/// Reduced fraction with positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(Int num) : num_(num), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(Int num, Int den) {
    if (den == 0) throw ParameterError("rational with zero denominator");
    if (den < 0) {
      num = checked::neg(num);
      den = checked::neg(den);
    }
    Int g = gcd(num, den);
    num_ = g == 0 ? 0 : num / g;
    den_ = g == 0 ? 1 : den / g;
  }

  Int num() const noexcept { return num_; }
  Int den() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }

  friend Rational operator+(const Rational& x, const Rational& y) {
    Int g = gcd(x.den_, y.den_);
    Int lhs = checked::mul(x.num_, y.den_ / g);
    Int rhs = checked::mul(y.num_, x.den_ / g);
    return {checked::add(lhs, rhs), checked::mul(x.den_ / g, y.den_)};
  }
  friend Rational operator-(const Rational& x) { return {checked::neg(x.num_), x.den_}; }
  friend Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }
  friend Rational operator*(const Rational& x, const Rational& y) {
    // Cross-reduce first to keep intermediates small.
    Int g1 = gcd(x.num_, y.den_);
    Int g2 = gcd(y.num_, x.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return {checked::mul(x.num_ / g1, y.num_ / g2), checked::mul(x.den_ / g2, y.den_ / g1)};
  }
  friend Rational operator/(const Rational& x, const Rational& y) {
    if (y.num_ == 0) throw ParameterError("rational division by zero");
    return x * Rational(y.den_, y.num_);
  }
  friend bool operator==(const Rational& x, const Rational& y) noexcept {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

 private:
  Int num_ = 0;
  Int den_ = 1;
};

}  // namespace pythperm
