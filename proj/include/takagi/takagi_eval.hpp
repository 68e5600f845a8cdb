#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "takagi/binary_expansion.hpp"
#include "takagi/rational.hpp"

namespace takagi {

/// Hard cap on the doubling-orbit period explored by the exact evaluator.
/// Beyond it evaluation fails loudly instead of approximating.
inline constexpr long kMaxOrbitStates = 1'000'000;

/// Distance from x to the nearest integer. Result lies in [0, 1/2].
inline Rational phi(const Rational& x) {
  const Rational f = frac_part(x);
  const Rational g = Rational(1) - f;
  return f <= g ? f : g;
}

namespace detail {

/// T(x) = num / (odd_den * 2^shift * (2^period - 1)), not reduced.
/// The decomposition splits the series at the preperiod of the doubling orbit
/// of x and sums the purely periodic tail as a geometric series.
struct SeriesParts {
  Integer num = 0;
  Integer odd_den = 1;
  long shift = 0;
  long period = 1;
};

inline void add_at_bit(std::vector<std::uint64_t>& limbs, std::uint64_t value, long bit) {
  std::size_t i = static_cast<std::size_t>(bit / 64);
  const unsigned off = static_cast<unsigned>(bit % 64);
  const unsigned __int128 wide = static_cast<unsigned __int128>(value) << off;
  std::uint64_t add = static_cast<std::uint64_t>(wide);
  std::uint64_t carry = static_cast<std::uint64_t>(wide >> 64);
  std::uint64_t before = limbs[i];
  limbs[i] += add;
  carry += (limbs[i] < before) ? 1 : 0;
  for (std::size_t j = i + 1; carry != 0; ++j) {
    before = limbs[j];
    limbs[j] += carry;
    carry = (limbs[j] < before) ? 1 : 0;
  }
}

/// Exact series decomposition for x in [0, 1).
inline SeriesParts takagi_series_parts(const Rational& x, long max_period = kMaxOrbitStates) {
  if (x < 0 || x >= 1) throw std::domain_error("takagi_series_parts: argument outside [0,1)");
  SeriesParts parts;
  const Integer p = rat_num(x), q = rat_den(x);
  if (p == 0) return parts;

  const long s = static_cast<long>(boost::multiprecision::lsb(q));
  const Integer r = q >> static_cast<unsigned long>(s);
  parts.odd_den = r;

  // Prefix over the preperiod: Pnum = sum c_n * 2^(s-1-n), c_n = min(u_n, q-u_n).
  Integer prefix_num = 0;
  Integer u = p;
  for (long n = 0; n < s; ++n) {
    const Integer c = (2 * u <= q) ? u : q - u;
    prefix_num += c << static_cast<unsigned long>(s - 1 - n);
    u <<= 1;
    if (u >= q) u -= q;
  }

  Integer tail = 0;  // N = sum over one period of c_n * 2^(d-1-n)
  long d = 1;
  if (r != 1) {
    const Integer v0_big = u >> static_cast<unsigned long>(s);
    if (fits_u64(r)) {
      const std::uint64_t ru = r.convert_to<std::uint64_t>();
      const std::uint64_t v0 = v0_big.convert_to<std::uint64_t>();
      std::uint64_t v = v0;
      d = 0;
      do {
        v <<= 1;
        if (v >= ru) v -= ru;
        if (++d > max_period) throw std::runtime_error("takagi: orbit period exceeds cap");
      } while (v != v0);
      std::vector<std::uint64_t> limbs(static_cast<std::size_t>(d / 64 + 3), 0);
      v = v0;
      for (long n = 0; n < d; ++n) {
        const std::uint64_t c = (2 * v <= ru) ? v : ru - v;
        if (c != 0) add_at_bit(limbs, c, d - 1 - n);
        v <<= 1;
        if (v >= ru) v -= ru;
      }
      import_bits(tail, limbs.begin(), limbs.end(), 64, false);
    } else {
      Integer v = v0_big;
      d = 0;
      do {
        v <<= 1;
        if (v >= r) v -= r;
        if (++d > max_period) throw std::runtime_error("takagi: orbit period exceeds cap");
      } while (v != v0_big);
      v = v0_big;
      for (long n = 0; n < d; ++n) {
        tail <<= 1;
        tail += (2 * v <= r) ? v : r - v;
        v <<= 1;
        if (v >= r) v -= r;
      }
    }
  }
  parts.period = d;

  if (s == 0) {
    parts.num = tail << 1;
    parts.shift = 0;
  } else {
    // T = prefix/(q*2^(s-1)) + 2^{-s} * 2N/(r*(2^d-1))
    parts.num = ((prefix_num << static_cast<unsigned long>(d)) - prefix_num) +
                (tail << static_cast<unsigned long>(s));
    parts.shift = 2 * s - 1;
  }
  return parts;
}

inline Rational series_to_rational(const SeriesParts& parts) {
  Integer den = parts.odd_den * ((Integer(1) << static_cast<unsigned long>(parts.period)) - 1);
  den <<= static_cast<unsigned long>(parts.shift);
  return Rational(parts.num, den);
}

}  // namespace detail

/// Exact value of the Takagi function at rational x in [0, 1]. Values are
/// memoized on the reduced argument; the shared cache is mutex guarded.
inline Rational takagi_eval(const Rational& x) {
  if (x < 0 || x > 1) throw std::domain_error("takagi: argument outside [0,1]");
  if (x == 0 || x == 1) return Rational(0);

  static std::map<Rational, Rational> cache;
  static std::mutex cache_mutex;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = cache.find(x); it != cache.end()) return it->second;
  }
  const Rational value = detail::series_to_rational(detail::takagi_series_parts(x));
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(x, value);
  }
  return value;
}

/// Finite partial sum T_k together with the slope of its linear piece at x.
struct PartialEvaluation {
  long k = 0;
  Rational value;
  long slope = 0;
};

inline PartialEvaluation takagi_partial(const Rational& x, long k) {
  if (x < 0 || x > 1) throw std::domain_error("takagi_partial: argument outside [0,1]");
  if (k < 0) throw std::domain_error("takagi_partial: negative k");
  PartialEvaluation out;
  out.k = k;
  Rational z = frac_part(x);
  Rational scale = 1;
  for (long n = 0; n < k; ++n) {
    out.value += scale * phi(z);
    scale /= 2;
    z = frac_part(2 * z);
  }
  out.slope = (x == 1) ? -k : digit_excess(x, k);
  return out;
}

/// Verifies, exactly, that T is symmetric about 1/2 and satisfies
/// T(x) = phi(x) + T({2x})/2, which is the two-branch functional equation.
/// Works on the unreduced series decomposition so that large denominators do
/// not force a gcd; a false return would indicate an evaluator bug.
inline bool check_functional_equation(const Rational& x) {
  if (x < 0 || x > 1) throw std::domain_error("check_functional_equation: argument outside [0,1]");
  const Rational xr = (x == 1) ? Rational(0) : x;
  if (xr == 0) return true;

  const auto a = detail::takagi_series_parts(xr);

  // Symmetry: the complement orbit must assemble to the identical decomposition.
  const auto mirror = detail::takagi_series_parts(Rational(1) - xr);
  if (a.num != mirror.num || a.odd_den != mirror.odd_den || a.shift != mirror.shift ||
      a.period != mirror.period)
    return false;

  // Branch identity over the common denominator odd_den * 2^S * (2^d - 1).
  const auto b = detail::takagi_series_parts(frac_part(2 * xr));
  if (a.odd_den != b.odd_den || a.period != b.period) return false;
  const Integer p = rat_num(xr), q = rat_den(xr);
  const long s = static_cast<long>(boost::multiprecision::lsb(q));
  const long S = std::max(a.shift, b.shift + 1);
  const Integer lhs = a.num << static_cast<unsigned long>(S - a.shift);
  const Integer phi_num = (2 * p <= q) ? p : q - p;
  const Integer phi_term =
      ((phi_num << static_cast<unsigned long>(a.period)) - phi_num)
      << static_cast<unsigned long>(S - s);
  const Integer rhs = phi_term + (b.num << static_cast<unsigned long>(S - b.shift - 1));
  return lhs == rhs;
}

}  // namespace takagi
