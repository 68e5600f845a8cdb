#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "takagi/rational.hpp"
#include "takagi/takagi_eval.hpp"

namespace takagi {

inline constexpr int kMaxCoverDepth = 48;

/// Dyadic interval [i/2^m, (i+1)/2^m] with a certified enclosure of the
/// Takagi values over it. The finite partial sum T_m is linear on the box and
/// agrees with T at both dyadic endpoints, and the discarded tail lies in
/// [0, (2/3) 2^{-m}], so
///   min(T(a), T(b)) <= T(x) <= max(T(a), T(b)) + (2/3) 2^{-m}.
struct DyadicBox {
  int depth = 0;
  Integer index;
  Rational lo, hi;
  Rational range_lo, range_hi;
};

inline DyadicBox make_box(int depth, const Integer& index) {
  if (depth < 0 || depth > kMaxCoverDepth) throw std::domain_error("make_box: depth outside range");
  if (index < 0 || index >= (Integer(1) << static_cast<unsigned long>(depth)))
    throw std::domain_error("make_box: index outside range");
  DyadicBox box;
  box.depth = depth;
  box.index = index;
  const Rational width = pow2r(-depth);
  box.lo = Rational(index) * width;
  box.hi = box.lo + width;
  const Rational ta = takagi_eval(box.lo);
  const Rational tb = takagi_eval(box.hi);
  box.range_lo = ta <= tb ? ta : tb;
  box.range_hi = (ta <= tb ? tb : ta) + Rational(2, 3) * width;
  return box;
}

inline std::pair<Rational, Rational> enclose(const DyadicBox& box) {
  return {box.range_lo, box.range_hi};
}

/// Sorted disjoint dyadic intervals enclosing the level set at `ordinate`.
/// Sound by construction: no box containing a solution is ever pruned.
/// `stabilized` reports whether the cluster count was flat over the last
/// three depths; a false value flags a non-terminating refinement.
struct IntervalCover {
  Rational ordinate;
  int depth = 0;
  std::vector<std::pair<Rational, Rational>> clusters;
  bool stabilized = false;
};

/// Breadth-first subdivision of [0, 1], pruning boxes whose certified range
/// cannot contain y and merging the adjacent survivors at the target depth.
/// Boxes sharing only an endpoint are merged, so a solution at a dyadic point
/// never splits a cluster in two.
inline IntervalCover level_set_cover(const Rational& y, int depth) {
  if (y < 0 || y > Rational(2, 3))
    throw std::domain_error("level_set_cover: ordinate outside [0,2/3]");
  if (depth < 0 || depth > kMaxCoverDepth)
    throw std::domain_error("level_set_cover: depth outside [0,48]");

  const auto clusters_of = [](const std::vector<Integer>& survivors, int m) {
    std::vector<std::pair<Rational, Rational>> out;
    const Rational width = pow2r(-m);
    for (std::size_t i = 0; i < survivors.size();) {
      std::size_t j = i;
      while (j + 1 < survivors.size() && survivors[j + 1] == survivors[j] + 1) ++j;
      out.emplace_back(Rational(survivors[i]) * width, Rational(survivors[j] + 1) * width);
      i = j + 1;
    }
    return out;
  };

  std::vector<Integer> survivors;
  if (const DyadicBox root = make_box(0, 0); root.range_lo <= y && y <= root.range_hi)
    survivors.push_back(0);
  std::vector<std::size_t> counts{clusters_of(survivors, 0).size()};

  for (int m = 1; m <= depth; ++m) {
    std::vector<Integer> next;
    for (const Integer& i : survivors) {
      for (int c = 0; c < 2; ++c) {
        const DyadicBox box = make_box(m, 2 * i + c);
        if (box.range_lo <= y && y <= box.range_hi) next.push_back(box.index);
      }
    }
    survivors = std::move(next);
    if (m >= depth - 2) counts.push_back(clusters_of(survivors, m).size());
  }

  IntervalCover cover;
  cover.ordinate = y;
  cover.depth = depth;
  cover.clusters = clusters_of(survivors, depth);
  cover.stabilized = depth >= 2 && counts.size() >= 3 &&
                     counts.end()[-1] == counts.end()[-2] && counts.end()[-2] == counts.end()[-3];
  return cover;
}

}  // namespace takagi
