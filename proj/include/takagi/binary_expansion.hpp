#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "takagi/rational.hpp"

namespace takagi {

/// Canonical eventually periodic binary expansion of a rational in [0, 1).
/// Dyadic rationals use the representation ending in all zeros, so their
/// period is empty. Both parts are minimal: the preperiod has length v2 of the
/// denominator and the period length is the multiplicative order of 2 modulo
/// the odd part of the denominator.
struct BinaryExpansion {
  std::vector<std::uint8_t> preperiod;
  std::vector<std::uint8_t> period;
  Rational value;
};

namespace detail {

struct OrbitShape {
  long preperiod = 0;  // v2(denominator)
  long period = 0;     // 0 iff dyadic
};

inline bool fits_u64(const Integer& q) { return q > 0 && q < (Integer(1) << 62); }

/// Preperiod/period lengths of the binary expansion of p/q in [0,1).
inline OrbitShape orbit_shape(const Integer& p, const Integer& q) {
  OrbitShape shape;
  if (p == 0) return shape;
  shape.preperiod = static_cast<long>(boost::multiprecision::lsb(q));
  const Integer r = q >> static_cast<unsigned long>(shape.preperiod);
  if (r == 1) return shape;  // dyadic
  // Start of the pure cycle: v0 = p*2^s mod q, divided by 2^s.
  Integer v0 = p;
  for (long i = 0; i < shape.preperiod; ++i) {
    v0 <<= 1;
    if (v0 >= q) v0 -= q;
  }
  v0 >>= static_cast<unsigned long>(shape.preperiod);
  if (fits_u64(r)) {
    const std::uint64_t ru = r.convert_to<std::uint64_t>();
    const std::uint64_t start = v0.convert_to<std::uint64_t>();
    std::uint64_t w = start;
    long d = 0;
    do {
      w <<= 1;
      if (w >= ru) w -= ru;
      ++d;
    } while (w != start);
    shape.period = d;
  } else {
    const Integer start = v0;
    Integer w = start;
    long d = 0;
    do {
      w <<= 1;
      if (w >= r) w -= r;
      ++d;
    } while (w != start);
    shape.period = d;
  }
  return shape;
}

/// Appends the first `count` binary digits of p/q to `out`.
inline void stream_digits(const Integer& p, const Integer& q, long count,
                          std::vector<std::uint8_t>& out) {
  out.reserve(out.size() + static_cast<std::size_t>(count));
  if (fits_u64(q)) {
    std::uint64_t r = p.convert_to<std::uint64_t>();
    const std::uint64_t qu = q.convert_to<std::uint64_t>();
    for (long i = 0; i < count; ++i) {
      r <<= 1;
      if (r >= qu) {
        out.push_back(1);
        r -= qu;
      } else {
        out.push_back(0);
      }
    }
  } else {
    Integer r = p;
    for (long i = 0; i < count; ++i) {
      r <<= 1;
      if (r >= q) {
        out.push_back(1);
        r -= q;
      } else {
        out.push_back(0);
      }
    }
  }
}

}  // namespace detail

/// Canonical expansion of x in [0, 1). Throws std::domain_error outside that
/// range.
inline BinaryExpansion to_binary(const Rational& x) {
  if (x < 0 || x >= 1) throw std::domain_error("to_binary: argument outside [0,1)");
  BinaryExpansion e;
  e.value = x;
  const Integer p = rat_num(x), q = rat_den(x);
  const auto shape = detail::orbit_shape(p, q);
  std::vector<std::uint8_t> digits;
  detail::stream_digits(p, q, shape.preperiod + shape.period, digits);
  e.preperiod.assign(digits.begin(), digits.begin() + shape.preperiod);
  e.period.assign(digits.begin() + shape.preperiod, digits.end());
  return e;
}

inline std::string to_string(const BinaryExpansion& e) {
  std::string s = "0.";
  for (auto d : e.preperiod) s += static_cast<char>('0' + d);
  if (!e.period.empty()) {
    s += '(';
    for (auto d : e.period) s += static_cast<char>('0' + d);
    s += ')';
  }
  return s;
}

/// D_k(x): excess of 0 digits over 1 digits among the first k binary digits,
/// with the all-zeros convention at dyadic rationals. Domain: x in [0, 1).
inline long digit_excess(const Rational& x, long k) {
  if (x < 0 || x >= 1) throw std::domain_error("digit_excess: argument outside [0,1)");
  if (k < 0) throw std::domain_error("digit_excess: negative index");
  const Integer q = rat_den(x);
  long excess = 0;
  if (detail::fits_u64(q)) {
    std::uint64_t r = rat_num(x).convert_to<std::uint64_t>();
    const std::uint64_t qu = q.convert_to<std::uint64_t>();
    for (long i = 0; i < k; ++i) {
      r <<= 1;
      if (r >= qu) {
        --excess;
        r -= qu;
      } else {
        ++excess;
      }
    }
  } else {
    Integer r = rat_num(x);
    for (long i = 0; i < k; ++i) {
      r <<= 1;
      if (r >= q) {
        --excess;
        r -= q;
      } else {
        ++excess;
      }
    }
  }
  return excess;
}

/// Decides whether the binary expansion of x contains a run of three
/// consecutive 0s that starts strictly after the first 1 digit. Exact for
/// every non-dyadic rational in (0, 1): a window of preperiod plus three
/// periods already shows every run the infinite tail can contain. Dyadic
/// input is rejected because the all-zeros tail makes the question trivial
/// and uninteresting.
inline bool has_three_zero_run_after_first_one(const Rational& x) {
  if (x <= 0 || x >= 1) throw std::domain_error("three-zero-run: argument outside (0,1)");
  if (is_dyadic(x)) throw std::domain_error("three-zero-run: dyadic argument");
  const auto shape = detail::orbit_shape(rat_num(x), rat_den(x));
  const long window = shape.preperiod + 3 * shape.period + 3;
  std::vector<std::uint8_t> digits;
  detail::stream_digits(rat_num(x), rat_den(x), window, digits);
  bool seen_one = false;
  int run = 0;
  for (auto d : digits) {
    if (d == 1) {
      seen_one = true;
      run = 0;
    } else if (seen_one) {
      if (++run >= 3) return true;
    }
  }
  return false;
}

}  // namespace takagi
