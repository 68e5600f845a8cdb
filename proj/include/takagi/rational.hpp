#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace takagi {

using Integer = boost::multiprecision::cpp_int;

/// Exact arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator. This is the only number type the library computes on.
using Rational = boost::multiprecision::cpp_rational;

inline Integer rat_num(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer rat_den(const Rational& x) { return boost::multiprecision::denominator(x); }

inline Integer pow2i(unsigned long k) { return Integer(1) << k; }

/// 2^k as an exact rational; k may be negative.
inline Rational pow2r(long k) {
  if (k >= 0) return Rational(Integer(1) << static_cast<unsigned long>(k));
  return Rational(Integer(1), Integer(1) << static_cast<unsigned long>(-k));
}

inline Rational pow4r(long k) { return pow2r(2 * k); }

/// True when x = p/2^j in lowest terms (including integers).
inline bool is_dyadic(const Rational& x) {
  const Integer d = rat_den(x);
  return (d & (d - 1)) == 0;
}

inline Integer floor_int(const Rational& x) {
  Integer q = rat_num(x) / rat_den(x);
  if (x < 0 && q * rat_den(x) != rat_num(x)) --q;
  return q;
}

/// x - floor(x), in [0, 1).
inline Rational frac_part(const Rational& x) { return x - Rational(floor_int(x)); }

inline std::string to_string(const Rational& x) {
  const Integer d = rat_den(x);
  if (d == 1) return rat_num(x).str();
  return rat_num(x).str() + "/" + d.str();
}

/// Parses "p/q" or a plain integer "p". Throws std::invalid_argument on
/// malformed input or a zero denominator.
inline Rational parse_rational(std::string_view s) {
  const auto bad = [&] { throw std::invalid_argument("not a rational: '" + std::string(s) + "'"); };
  if (s.empty()) bad();
  const auto is_int = [&](std::string_view t) {
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    if (!is_int(s)) bad();
    return Rational(Integer(std::string(s)));
  }
  const std::string_view ns = s.substr(0, slash);
  const std::string_view ds = s.substr(slash + 1);
  if (!is_int(ns) || !is_int(ds)) bad();
  Integer num{std::string(ns)};
  Integer den{std::string(ds)};
  if (den == 0) bad();
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

/// Fixed-point decimal rendering with `digits` fractional digits, truncated
/// toward zero. Used for plot output; exact values stay in "p/q" form.
inline std::string decimal_string(const Rational& x, int digits = 12) {
  const bool neg = x < 0;
  Rational a = neg ? Rational(-x) : x;
  Integer ip = floor_int(a);
  Rational frac = a - Rational(ip);
  std::string out = (neg ? "-" : "") + ip.str() + ".";
  Integer n = rat_num(frac), d = rat_den(frac);
  for (int i = 0; i < digits; ++i) {
    n *= 10;
    out += static_cast<char>('0' + (n / d).convert_to<int>());
    n %= d;
  }
  return out;
}

}  // namespace takagi
