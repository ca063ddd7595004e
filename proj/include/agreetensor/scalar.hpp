#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace agreetensor {

// Exact backend. Every invariant-vanishing check and closed-form identity runs on this.
using Rational = mpq_class;

// Parses "p", "p/q", "-1.25", "3e-2" exactly. Decimal literals are read as the rational
// they spell, so "0.1" is 1/10, never the nearest double.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

// Nearest double (get_d truncates).
double to_double(const Rational& value);
inline double to_double(double value) { return value; }

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational from_ratio(std::int64_t p, std::int64_t q = 1) {
    Rational r(static_cast<long>(p), static_cast<long>(q));
    r.canonicalize();
    return r;
  }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static bool is_negative(const Rational& x) { return sgn(x) < 0; }
  static bool is_one(const Rational& x) { return x == 1; }
  static bool equal(const Rational& x, const Rational& y) { return x == y; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr double sum_tolerance = 1e-12;
  static constexpr double relative_tolerance = 1e-10;
  static double from_ratio(std::int64_t p, std::int64_t q = 1) {
    return static_cast<double>(p) / static_cast<double>(q);
  }
  static bool is_zero(double x) { return x == 0.0; }
  static bool is_negative(double x) { return x < 0.0; }
  static bool is_one(double x) { return std::abs(x - 1.0) <= sum_tolerance; }
  static bool equal(double x, double y) {
    const double scale = std::max(std::abs(x), std::abs(y));
    return std::abs(x - y) <= relative_tolerance * scale;
  }
};

template <class T>
T to_scalar(const Rational& value) {
  if constexpr (ScalarTraits<T>::exact) {
    return value;
  } else {
    return to_double(value);
  }
}

}  // namespace agreetensor
