#include "agreetensor/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>

#include "agreetensor/error.hpp"

namespace agreetensor {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorCode::Parse, "not a rational literal: '" + std::string(text) + "'");
}

Rational parse_decimal(std::string_view body, std::string_view original) {
  // body has no sign: digits[.digits][e[+-]digits]
  std::string_view mantissa = body;
  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = body.substr(0, e);
    std::string_view exp = body.substr(e + 1);
    bool neg = false;
    if (!exp.empty() && (exp.front() == '+' || exp.front() == '-')) {
      neg = exp.front() == '-';
      exp.remove_prefix(1);
    }
    if (!all_digits(exp) || exp.size() > 6) bad(original);
    exponent = std::stol(std::string(exp));
    if (neg) exponent = -exponent;
  }
  std::string digits;
  long frac_len = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view ip = mantissa.substr(0, dot);
    std::string_view fp = mantissa.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
        (!fp.empty() && !all_digits(fp))) {
      bad(original);
    }
    digits = std::string(ip) + std::string(fp);
    frac_len = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mantissa)) bad(original);
    digits = std::string(mantissa);
  }
  mpz_class num(digits, 10);
  long scale = exponent - frac_len;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational r;
  if (scale >= 0) {
    r = Rational(num * pow10);
  } else {
    r = Rational(num, pow10);
  }
  r.canonicalize();
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) bad(text);
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational r;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view p = s.substr(0, slash);
    std::string_view q = s.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) bad(text);
    mpz_class den(std::string(q), 10);
    if (den == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
    r = Rational(mpz_class(std::string(p), 10), den);
    r.canonicalize();
  } else {
    r = parse_decimal(s, text);
  }
  return negative ? Rational(-r) : r;
}

double to_double(const Rational& value) {
  const double d = value.get_d();
  if (!std::isfinite(d)) return d;
  const double up = std::nextafter(d, sgn(value) < 0 ? -HUGE_VAL : HUGE_VAL);
  if (!std::isfinite(up)) return d;
  const Rational err_d = abs(value - Rational(d));
  const Rational err_up = abs(value - Rational(up));
  if (err_up < err_d) return up;
  if (err_up == err_d) {
    std::int64_t bits;
    std::memcpy(&bits, &d, sizeof bits);
    if (bits & 1) return up;
  }
  return d;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

}  // namespace agreetensor
