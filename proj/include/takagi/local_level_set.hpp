#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "takagi/binary_expansion.hpp"
#include "takagi/expansion.hpp"
#include "takagi/rational.hpp"

namespace takagi {

namespace detail {

/// Eventually periodic binary digit sequence: `pre` followed by `cyc`
/// repeating forever (an empty cycle means a tail of zeros).
struct DigitSeq {
  std::vector<std::uint8_t> pre;
  std::vector<std::uint8_t> cyc;

  Rational value() const {
    Rational v = 0;
    for (std::size_t i = 0; i < pre.size(); ++i)
      if (pre[i]) v += pow2r(-static_cast<long>(i + 1));
    if (!cyc.empty()) {
      Rational c = 0;
      for (std::size_t i = 0; i < cyc.size(); ++i)
        if (cyc[i]) c += pow2r(-static_cast<long>(i + 1));
      if (c != 0)
        v += pow2r(-static_cast<long>(pre.size())) * c /
             (1 - pow2r(-static_cast<long>(cyc.size())));
    }
    return v;
  }

  std::uint8_t digit(std::size_t n) const {  // 1-based position
    if (n <= pre.size()) return pre[n - 1];
    if (cyc.empty()) return 0;
    return cyc[(n - pre.size() - 1) % cyc.size()];
  }
};

/// Digit sequence of the leftmost solution attached to an expansion: ones at
/// positions k_n + 2n. A periodic tail of band indices makes the digits
/// periodic with twice the cycle length.
inline DigitSeq seed_digits(const TakagiExpansion& e) {
  require_exact_tail(e, "seed_digits");
  DigitSeq d;
  const auto one_pos = [&](std::size_t i) {
    return static_cast<std::size_t>(e.terms[i]) + 2 * i;
  };
  if (e.tail == Tail::Terminated) {
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
      const std::size_t pos = one_pos(i);
      if (d.pre.size() < pos) d.pre.resize(pos, 0);
      d.pre[pos - 1] = 1;
    }
    return d;
  }
  const std::size_t p = e.terms.size() - e.cycle_entry;
  const std::size_t cycle_start = one_pos(e.cycle_entry);  // first one of the cycle
  d.pre.resize(cycle_start - 1, 0);
  for (std::size_t i = 0; i < e.cycle_entry; ++i) d.pre[one_pos(i) - 1] = 1;
  d.cyc.resize(2 * p, 0);
  for (std::size_t i = e.cycle_entry; i < e.terms.size(); ++i)
    d.cyc[one_pos(i) - cycle_start] = 1;
  return d;
}

}  // namespace detail

struct LocalMember {
  Rational value;
  bool split = false;  // dyadic member whose two binary representations both belong
};

/// Equivalence class of an abscissa under the relation |D_n(x)| = |D_n(x')|
/// for every n. Finite classes carry 2^{twos_count+1} points, counting each
/// split dyadic twice; classes whose generating expansion repeats the term 2
/// forever are uncountable and expose only a finite member sample.
struct LocalLevelSet {
  Rational seed;
  std::vector<LocalMember> members;
  bool uncountable = false;
  std::size_t twos_count = 0;            // meaningful for finite classes
  unsigned long long cardinality = 0;    // 2^{twos_count+1}; 0 when uncountable
};

/// Builds the local level set generated by an expansion with an exact tail.
/// Members are produced by block flips: complementing whole digit blocks
/// delimited by the returns of the digit excess D_n to zero, which is exactly
/// the operation preserving |D_n|. For finite classes members are sorted
/// ascending; uncountable classes list the first `member_limit` flips in
/// mask order over the leading blocks.
inline LocalLevelSet local_level_set(const TakagiExpansion& e, std::size_t member_limit = 64) {
  LocalLevelSet out;
  const detail::DigitSeq seed = detail::seed_digits(e);
  out.seed = seed.value();

  // Returns of D to zero, scanned over the preperiod plus one digit cycle.
  const std::size_t cyc_len = seed.cyc.size();
  std::vector<std::size_t> zeros{0};
  long d = 0;
  bool tail_zero = false;
  for (std::size_t n = 1; n <= seed.pre.size() + cyc_len; ++n) {
    d += seed.digit(n) ? -1 : 1;
    if (d == 0) {
      if (n > seed.pre.size())
        tail_zero = true;  // recurs every cycle pass: infinitely many blocks
      else
        zeros.push_back(n);
    }
  }

  std::size_t twos = 0;
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    const bool in_cycle = e.tail == Tail::Periodic && i >= e.cycle_entry;
    if (e.terms[i] == 2 && !in_cycle) ++twos;
    if (e.terms[i] == 2 && in_cycle && !tail_zero)
      throw std::logic_error("local_level_set: digit blocks disagree with the term count");
  }
  out.twos_count = twos;

  // Finite digit blocks (lo, hi], all inside the preperiod; the tail block
  // runs from the last zero to infinity.
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t j = 0; j + 1 < zeros.size(); ++j) blocks.emplace_back(zeros[j], zeros[j + 1]);
  const std::size_t tail_start = zeros.back();

  const auto flip_member = [&](unsigned long long mask, bool flip_tail) {
    detail::DigitSeq m = seed;
    for (std::size_t b = 0; b < blocks.size(); ++b)
      if (mask & (1ull << b))
        for (std::size_t n = blocks[b].first + 1; n <= blocks[b].second; ++n) m.pre[n - 1] ^= 1;
    if (flip_tail) {
      for (std::size_t n = tail_start + 1; n <= m.pre.size(); ++n) m.pre[n - 1] ^= 1;
      if (m.cyc.empty()) m.cyc = {1};  // zero tail becomes an all-ones tail
      else
        for (auto& c : m.cyc) c ^= 1;
    }
    return m.value();
  };

  if (tail_zero) {
    out.uncountable = true;
    // Deterministic sample: flip masks over the leading finite blocks. Each
    // cycle pass contributes at least one block boundary, so unrolling a few
    // more passes than requested bits always yields enough blocks. Every
    // produced point genuinely belongs to the class.
    std::size_t bits = 1;
    while ((1ull << bits) < member_limit && bits < 16) ++bits;
    const std::size_t passes = bits + 2;
    std::vector<std::pair<std::size_t, std::size_t>> sample_blocks = blocks;
    std::size_t prev = tail_start;
    long dd = 0;
    for (std::size_t n = 1; n <= seed.pre.size() + passes * cyc_len; ++n) {
      dd += seed.digit(n) ? -1 : 1;
      if (dd == 0 && n > tail_start) {
        sample_blocks.emplace_back(prev, n);
        prev = n;
      }
    }
    detail::DigitSeq base = seed;
    for (std::size_t i = 0; i < passes * cyc_len; ++i) base.pre.push_back(seed.cyc[i % cyc_len]);
    for (unsigned long long mask = 0;
         mask < (1ull << std::min<std::size_t>(sample_blocks.size(), 16)) &&
         out.members.size() < member_limit;
         ++mask) {
      detail::DigitSeq m = base;
      for (std::size_t b = 0; b < sample_blocks.size(); ++b)
        if (mask & (1ull << b))
          for (std::size_t n = sample_blocks[b].first + 1; n <= sample_blocks[b].second; ++n)
            m.pre[n - 1] ^= 1;
      out.members.push_back({m.value(), false});
    }
    return out;
  }

  if (blocks.size() > 62) throw std::domain_error("local_level_set: class too large to enumerate");
  const unsigned long long reps = 1ull << (blocks.size() + 1);
  out.cardinality = reps;
  if (blocks.size() != twos)
    throw std::logic_error("local_level_set: digit blocks disagree with the term count");

  // Low bit selects the tail block, the remaining bits select finite blocks.
  std::map<Rational, int> by_value;
  for (unsigned long long mask = 0; mask < reps; ++mask)
    ++by_value[flip_member(mask >> 1, mask & 1)];
  out.members.clear();
  for (const auto& [v, n] : by_value) out.members.push_back({v, n == 2});
  return out;
}

/// Exact decision of |D_n(x1)| = |D_n(x2)| for all n, for rationals in [0,1].
/// Beyond the joint preperiod both excess sequences advance by a fixed drift
/// per digit period, so equality for all n reduces to a finite window check
/// once every zero of either sequence has been passed.
inline bool same_local_level_set(const Rational& x1, const Rational& x2,
                                 std::size_t min_depth = 0) {
  if (x1 < 0 || x1 > 1 || x2 < 0 || x2 > 1)
    throw std::domain_error("same_local_level_set: arguments outside [0,1]");
  const auto digits_of = [](const Rational& x) {
    detail::DigitSeq d;
    if (x == 1) {
      d.cyc = {1};
      return d;
    }
    const BinaryExpansion e = to_binary(x);
    d.pre = e.preperiod;
    d.cyc = e.period;
    if (d.cyc.empty()) d.cyc = {0};
    return d;
  };
  const detail::DigitSeq a = digits_of(x1), b = digits_of(x2);
  const std::size_t s = std::max(a.pre.size(), b.pre.size());
  const std::size_t P = std::lcm(a.cyc.size(), b.cyc.size());

  const auto drift_over = [&](const detail::DigitSeq& d) {
    long g = 0;
    for (std::size_t n = s + 1; n <= s + P; ++n) g += d.digit(n) ? -1 : 1;
    return g;
  };
  const long s1 = drift_over(a), s2 = drift_over(b);

  long d1 = 0, d2 = 0, peak = 0;
  const auto step = [&](std::size_t n) {
    d1 += a.digit(n) ? -1 : 1;
    d2 += b.digit(n) ? -1 : 1;
    peak = std::max({peak, std::abs(d1), std::abs(d2)});
  };
  const auto check_to = [&](std::size_t from, std::size_t to) {
    for (std::size_t n = from; n <= to; ++n) {
      step(n);
      if (std::abs(d1) != std::abs(d2)) return false;
    }
    return true;
  };

  if (s1 == 0 && s2 == 0) {
    // The pair (D1, D2) is periodic beyond the preperiod.
    return check_to(1, std::max(s + P, min_depth));
  }
  if (std::abs(s1) != std::abs(s2)) return false;  // growth rates diverge

  // Warm up past the last possible zero of either sequence, then one more
  // period pins the drift-aligned tail.
  if (!check_to(1, s + P)) return false;
  const std::size_t horizon = s + P * static_cast<std::size_t>(peak + 2) + P;
  return check_to(s + P + 1, std::max(horizon, min_depth));
}

}  // namespace takagi
