#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "takagi/expansion.hpp"
#include "takagi/rational.hpp"
#include "takagi/takagi_eval.hpp"

namespace takagi {

/// Exact Catalan number C_n = binom(2n, n)/(n+1).
inline Integer catalan(int n) {
  if (n < 0) throw std::domain_error("catalan: negative index");
  Integer c = 1;
  for (int i = 0; i < n; ++i) {
    // C_{i+1} = C_i * 2(2i+1)/(i+2), always an exact division.
    c *= 2 * (2 * i + 1);
    c /= i + 2;
  }
  return c;
}

/// A balanced dyadic rational x0 = 0.e1...e_{2m} together with the geometry
/// of the graph copy sitting above [x0, x0 + 4^{-m}].
struct HumpDescriptor {
  Rational x0;
  std::string bits;        // the 2m binary digits of x0
  int order = 0;           // m
  int generation = 0;      // number of j <= 2m with D_j(x0) = 0
  bool leading = false;    // D_j >= 0 for every j <= 2m
  bool first_generation = false;
  bool subsidiary = false; // immediate left-neighbor copy of a one-order-larger hump
  Rational i_lo, i_hi;     // abscissa interval [x0, x0 + 4^{-m}]
  Rational j_lo, j_hi;     // ordinate interval [T(x0), T(x0) + (2/3) 4^{-m}]
};

enum class HumpFilter { All, FirstGeneration, Leading, NonSubsidiary };

inline constexpr int kDefaultHumpOrderCap = 14;

namespace detail {

inline bool is_first_generation(const std::vector<int>& excess) {
  // excess[j] = D_j, j = 0..2m; first generation means no interior zero.
  for (std::size_t j = 1; j + 1 < excess.size(); ++j)
    if (excess[j] == 0) return false;
  return true;
}

inline bool ends_with_011(const std::vector<std::uint8_t>& bits) {
  const std::size_t n = bits.size();
  return n >= 3 && bits[n - 3] == 0 && bits[n - 2] == 1 && bits[n - 1] == 1;
}

/// A hump counts as subsidiary when its digit string is the j = 1 member of
/// the left-neighbor chain of a hump one order lower: it ends in "011" and
/// contracting that suffix to "1" leaves a first-generation leading balanced
/// string.
inline bool is_subsidiary(const std::vector<std::uint8_t>& bits) {
  if (!ends_with_011(bits)) return false;
  std::vector<std::uint8_t> parent(bits.begin(), bits.end() - 3);
  parent.push_back(1);
  int d = 0;
  std::size_t zeros = 0;
  for (std::size_t j = 0; j < parent.size(); ++j) {
    d += parent[j] ? -1 : 1;
    if (d < 0) return false;
    if (d == 0 && j + 1 < parent.size()) return false;  // interior zero
    if (d == 0) ++zeros;
  }
  return d == 0 && zeros == 1;
}

}  // namespace detail

/// Enumerates humps of order 1..max_order matching the filter, in
/// lexicographic digit order within each order. NonSubsidiary selects the
/// first-generation leading humps that are not subsidiary, which is the
/// family whose ordinate projections tile the removed set.
inline std::vector<HumpDescriptor> enumerate_humps(int max_order,
                                                   HumpFilter filter = HumpFilter::All,
                                                   int order_cap = kDefaultHumpOrderCap) {
  if (max_order < 1 || max_order > order_cap)
    throw std::domain_error("enumerate_humps: order outside [1, cap]");
  std::vector<HumpDescriptor> out;
  std::vector<std::uint8_t> bits;
  std::vector<int> excess{0};

  const Rational two_thirds(2, 3);
  const auto emit = [&](int m) {
    const bool leading = *std::min_element(excess.begin(), excess.end()) >= 0;
    if (filter == HumpFilter::Leading && !leading) return;
    const bool first_gen = detail::is_first_generation(excess);
    if (filter == HumpFilter::FirstGeneration && !first_gen) return;
    const bool subsidiary = detail::is_subsidiary(bits);
    if (filter == HumpFilter::NonSubsidiary && !(first_gen && leading && !subsidiary)) return;

    HumpDescriptor h;
    h.order = m;
    h.leading = leading;
    h.first_generation = first_gen;
    h.subsidiary = subsidiary;
    Integer num = 0;
    h.bits.reserve(bits.size());
    for (auto b : bits) {
      num = (num << 1) | static_cast<int>(b);
      h.bits += static_cast<char>('0' + b);
    }
    h.generation = static_cast<int>(std::count(excess.begin() + 1, excess.end(), 0));
    h.x0 = Rational(num, Integer(1) << static_cast<unsigned long>(2 * m));
    h.i_lo = h.x0;
    h.i_hi = h.x0 + pow4r(-m);
    h.j_lo = (h.x0 == 0) ? Rational(0)
                         : detail::series_to_rational(detail::takagi_series_parts(h.x0));
    h.j_hi = h.j_lo + two_thirds * pow4r(-m);
    out.push_back(std::move(h));
  };

  // Depth-first walk over digit strings; D_j must be able to return to zero
  // within the remaining digits, and leading walks never let it go negative.
  const bool need_leading = filter == HumpFilter::Leading || filter == HumpFilter::NonSubsidiary;
  const bool need_first_gen =
      filter == HumpFilter::FirstGeneration || filter == HumpFilter::NonSubsidiary;
  for (int m = 1; m <= max_order; ++m) {
    const int len = 2 * m;
    bits.clear();
    excess.assign(1, 0);
    const auto walk = [&](auto&& self, int pos) -> void {
      if (pos == len) {
        if (excess.back() == 0) emit(m);
        return;
      }
      const int d = excess.back();
      const int remaining = len - pos;
      for (std::uint8_t b : {std::uint8_t{0}, std::uint8_t{1}}) {
        const int nd = d + (b ? -1 : 1);
        if (std::abs(nd) > remaining - 1) continue;  // cannot rebalance in time
        if (need_leading && nd < 0) continue;
        if (need_first_gen && nd == 0 && pos + 1 != len) continue;
        bits.push_back(b);
        excess.push_back(nd);
        self(self, pos + 1);
        bits.pop_back();
        excess.pop_back();
      }
    };
    walk(walk, 0);
  }
  return out;
}

/// Total length removed from the band [t_k, t_{k-1}) by the ordinate
/// projections of all non-subsidiary first-generation leading humps.
inline Rational removed_length_in_band(int k) {
  if (k < 3) throw std::domain_error("removed_length_in_band: k must be >= 3");
  if (k == 3) return Rational(1, 32);
  return pow2r(-(k + 1)) - pow2r(-(2 * k - 1));
}

/// The removed ordinate intervals below 1/2: images of the band seeds
/// J_k = [t_k, t_k + (2/3)4^{-k}] under compositions of the affine branch
/// inverses y -> y/4 + t_k, one interval per admissible index tuple
/// (k_0,...,k_n) with n <= depth_n and every k_i <= max_k. The tail bound is
/// the exact diameter mass of every omitted tuple, from the closed-form total
/// of 1/12.
struct RemovedIntervalSystem {
  int depth_n = 0;
  int max_k = 0;
  std::vector<std::pair<Rational, Rational>> intervals;  // sorted by left endpoint
  Rational diam_sum;
  Rational tail_bound;
};

inline RemovedIntervalSystem removed_intervals(int depth_n, int max_k) {
  if (depth_n < 0 || max_k < 3) throw std::domain_error("removed_intervals: bad parameters");
  RemovedIntervalSystem sys;
  sys.depth_n = depth_n;
  sys.max_k = max_k;
  sys.diam_sum = 0;
  const Rational two_thirds(2, 3);

  // DFS over admissible tuples, carrying the accumulated offset
  // sum t_{k_i} / 4^i and emitting one interval per visited tuple.
  const auto walk = [&](auto&& self, int depth, int min_k, const Rational& offset) -> void {
    for (int k = std::max(3, min_k); k <= max_k; ++k) {
      const Rational lo = offset + band_floor(k) * pow4r(-depth);
      const Rational diam = two_thirds * pow4r(-(k + depth));
      sys.intervals.emplace_back(lo, lo + diam);
      sys.diam_sum += diam;
      if (depth < depth_n) self(self, depth + 1, k - 1, lo);
    }
  };
  walk(walk, 0, 3, Rational(0));

  std::sort(sys.intervals.begin(), sys.intervals.end());
  sys.tail_bound = Rational(1, 12) - sys.diam_sum;
  if (sys.tail_bound < 0) throw std::logic_error("removed_intervals: diameter mass exceeds 1/12");
  return sys;
}

/// Certified rational bounds on the measure of the two-point ordinate set.
/// The removed set within [0, 1/2) is covered by the enumerated intervals
/// plus a tail of omitted intervals whose total diameter is known exactly,
/// and [1/2, 2/3] is removed entirely, so
///   1/2 - union - tail  <=  measure  <=  1/2 - union.
struct MeasureBounds {
  Rational lower;
  Rational upper;
  int depth_n = 0;
  int max_k = 0;
  Rational union_measure;
  Rational tail_bound;
};

inline MeasureBounds s2_measure_bounds(int depth_n, int max_k) {
  const RemovedIntervalSystem sys = removed_intervals(depth_n, max_k);
  Rational united = 0;
  Rational cur_lo = 0, cur_hi = -1;
  bool open = false;
  for (const auto& [lo, hi] : sys.intervals) {
    if (open && lo <= cur_hi) {
      if (hi > cur_hi) cur_hi = hi;
    } else {
      if (open) united += cur_hi - cur_lo;
      cur_lo = lo;
      cur_hi = hi;
      open = true;
    }
  }
  if (open) united += cur_hi - cur_lo;

  MeasureBounds b;
  b.depth_n = depth_n;
  b.max_k = max_k;
  b.union_measure = united;
  b.tail_bound = sys.tail_bound;
  b.upper = Rational(1, 2) - united;
  b.lower = b.upper - sys.tail_bound;
  return b;
}

}  // namespace takagi
