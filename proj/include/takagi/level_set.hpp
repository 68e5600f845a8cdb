#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "takagi/binary_expansion.hpp"
#include "takagi/expansion.hpp"
#include "takagi/rational.hpp"
#include "takagi/takagi_eval.hpp"

namespace takagi {

inline constexpr long kDefaultBudget = 10'000;

/// x -> scale*x + offset. The two map families of the level-set equations are
/// built from these.
struct AffineMap {
  Rational scale;
  Rational offset;
  Rational operator()(const Rational& x) const { return scale * x + offset; }
};

/// f_k(x) = x/4 + 2^{-k}: carries L0 of the shifted ordinate into band k.
inline AffineMap f_map(int k) { return {Rational(1, 4), pow2r(-k)}; }

/// g_{k,j}(x) = x/4^{k+j} + 2^{-k} - sum_{r<=j} 4^{-(k+r)}: carries the full
/// level set at the j-th rescaled residual into the hump column left of 2^{-k}.
/// g_{k,j}(0) is the anchor point 2^{-k} - sum_{r<=j} 4^{-(k+r)}.
inline AffineMap g_map(int k, int j) {
  Rational offset = pow2r(-k);
  for (int r = 0; r <= j; ++r) offset -= pow4r(-(k + r));
  return {pow4r(-(k + j)), offset};
}

enum class TwoPointAnswer { Yes, No, Unknown };

struct TwoPointResult {
  TwoPointAnswer answer = TwoPointAnswer::Unknown;
  std::string certificate;
  long steps = 0;
};

namespace detail {

/// Exact invariant certifying that the band index increases by exactly one
/// forever. With u = 2^k y - k, one shift step maps u to 8u - (k+1) whenever
/// the next band index is k+1, which holds iff u lies in [(k+1)/8, k/4).
/// The value u = (7k+8)/49 reproduces itself as (7(k+1)+8)/49 and sits inside
/// that window for every k >= 3, so the whole tail is the +1 ladder and every
/// residual 4^{k_m}(y_m - t_{k_m}) = 2^{k_m} u_m stays above 2/3.
inline bool plus_one_ladder(const Rational& y, int k) {
  const Rational u = y * pow2r(k) - k;
  return u == Rational(7 * k + 8, 49);
}

/// Orbit walk behind the two-point decision. Answers No as soon as a residual
/// drops to 2/3 or below, and Yes when one of the closing certificates fires:
/// an exact orbit cycle, a no-three-zeros tail, or the +1 ladder.
inline TwoPointResult two_point_walk(const Rational& y, long budget) {
  TwoPointResult out;
  const Rational two_thirds(2, 3);
  std::set<Rational> seen;
  Rational cur = y;
  for (long step = 0; step < budget; ++step) {
    out.steps = step + 1;
    const int k = band_index(cur);
    const Rational offset = cur - band_floor(k);
    if (offset == 0) {
      out.answer = TwoPointAnswer::No;
      out.certificate = "band floor hit";
      return out;
    }
    if (pow4r(k) * offset <= two_thirds) {
      out.answer = TwoPointAnswer::No;
      out.certificate = "residual at most 2/3";
      return out;
    }
    if (seen.count(cur)) {
      out.answer = TwoPointAnswer::Yes;
      out.certificate = "orbit cycle";
      return out;
    }
    if (!is_dyadic(cur) && !has_three_zero_run_after_first_one(cur)) {
      out.answer = TwoPointAnswer::Yes;
      out.certificate = "no-3-zeros tail";
      return out;
    }
    if (plus_one_ladder(cur, k)) {
      out.answer = TwoPointAnswer::Yes;
      out.certificate = "plus-one ladder";
      return out;
    }
    seen.insert(cur);
    cur = 4 * offset;
  }
  out.answer = TwoPointAnswer::Unknown;
  out.certificate = "budget exhausted";
  return out;
}

}  // namespace detail

/// Semi-decision of |L(y)| = 2 for 0 < y < 1/2. Yes and No are certified
/// exactly; Unknown only reports an exhausted budget.
inline TwoPointResult is_two_point_level_set(const Rational& y, long budget = kDefaultBudget) {
  if (y <= 0 || 2 * y >= 1)
    throw std::domain_error("is_two_point_level_set: argument outside (0,1/2)");
  return detail::two_point_walk(y, budget);
}

enum class DoublingVerdict { SufficientForTwo, NecessitatesMore, Inconclusive };

/// Pure arithmetic growth test on a band-index sequence. A pair (a, b) with
/// 2^b >= 3a*4^a forces more than two solutions; if every pair satisfies
/// 2^{b+2} <= 3a*4^a the sequence growth alone certifies a two-point level
/// set. Both comparisons are exact integer inequalities.
inline DoublingVerdict doubling_bound_check(const std::vector<int>& ks) {
  bool all_sufficient = true;
  for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
    const int a = ks[i], b = ks[i + 1];
    const Integer bound = Integer(3) * a * (Integer(1) << static_cast<unsigned long>(2 * a));
    if ((Integer(1) << static_cast<unsigned long>(b)) >= bound)
      return DoublingVerdict::NecessitatesMore;
    if ((Integer(1) << static_cast<unsigned long>(b + 2)) > bound) all_sufficient = false;
  }
  return all_sufficient ? DoublingVerdict::SufficientForTwo : DoublingVerdict::Inconclusive;
}

struct CardinalityResult {
  enum class Kind { Exact, Infinite, AtLeast } kind = Kind::AtLeast;
  unsigned long long count = 0;  // exact value, or certified lower bound
  std::string certificate;
};

struct LevelSetEnumeration {
  Rational ordinate;
  std::vector<Rational> points;
  bool complete = false;
};

struct WitnessConstruction {
  unsigned long long target_cardinality = 0;
  Rational ordinate;
  std::string recipe;
  Rational base_ordinate;
};

/// Cardinality and enumeration engine for level sets of the Takagi function,
/// built on the set equations
///   L(y)  = L0(y) united with its mirror 1 - L0(y),
///   L0(y) = f_k[L0(shift y)] united with g_{k,j}[L(4^j residual)]      (band k >= 3),
///   L0(y) = g_{1,j}[L(4^j residual)]                                    (band 2),
/// where the union over j runs while 4^j residual <= 2/3. Exact results are
/// memoized per reduced ordinate; budget-limited results are never cached.
/// Instances are not safe for concurrent use; create one per thread.
class LevelSetEngine {
 public:
  CardinalityResult cardinality(const Rational& y, long budget = kDefaultBudget) {
    if (y < 0 || y > Rational(2, 3))
      throw std::domain_error("cardinality: argument outside [0,2/3]");
    begin_call(budget);
    const Count c = count_full(y);
    CardinalityResult out;
    out.count = c.value;
    out.kind = c.kind == Count::Kind::Exact      ? CardinalityResult::Kind::Exact
               : c.kind == Count::Kind::Infinite ? CardinalityResult::Kind::Infinite
                                                 : CardinalityResult::Kind::AtLeast;
    out.certificate = joined_certificates(c);
    return out;
  }

  /// Exact point list for a level set whose cardinality is certified Exact.
  /// Every returned abscissa is re-verified against the evaluator.
  LevelSetEnumeration enumerate_level_set(const Rational& y, long budget = kDefaultBudget) {
    const CardinalityResult card = cardinality(y, budget);
    if (card.kind != CardinalityResult::Kind::Exact)
      throw std::domain_error("enumerate_level_set: cardinality not certified finite");
    begin_call(budget);
    std::vector<Rational> pts = points_full(y);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (const Rational& x : pts)
      if (takagi_eval(x) != y) throw std::logic_error("enumerate_level_set: point fails T(x)=y");
    LevelSetEnumeration out;
    out.ordinate = y;
    out.points = std::move(pts);
    out.complete = out.points.size() == card.count;
    return out;
  }

  /// Ordinate with |L(y)| = 2n, built by rescaling a certified base ordinate
  /// into the appropriate band, then validated through the cardinality engine.
  WitnessConstruction construct_witness(unsigned long long n, long budget = kDefaultBudget) {
    if (n < 1) throw std::domain_error("construct_witness: n must be >= 1");
    const Rational third(1, 3);
    const Rational seed(3, 7);
    WitnessConstruction w;
    w.target_cardinality = 2 * n;
    if (n == 1) {
      w.ordinate = third;
      w.base_ordinate = third;
      w.recipe = "certified base ordinate";
    } else if (n == 2) {
      w.ordinate = Rational(1, 2) + Rational(1, 4) * third;
      w.base_ordinate = third;
      w.recipe = "half-band shift";
    } else if ((n & (n - 1)) == 0) {
      // 2n = 2^m: chain of half-band shifts doubling the count each link.
      int m = 0;
      for (unsigned long long v = 2 * n; v > 1; v >>= 1) ++m;
      Rational y = seed * pow4r(-(m - 1));
      for (int i = 0; i <= m - 2; ++i) y += Rational(1, 2) * pow4r(-i);
      w.ordinate = y;
      w.base_ordinate = seed;
      w.recipe = "doubling chain";
    } else if (n % 2 == 1) {
      const long m = static_cast<long>((n - 1) / 2);
      w.ordinate = Rational(3, 8) + pow4r(-(m + 2)) * third;
      w.base_ordinate = third;
      w.recipe = "third-band shift";
    } else {
      const long m = static_cast<long>(n / 2);
      w.ordinate = Rational(1, 2) + pow4r(-m) * third;
      w.base_ordinate = third;
      w.recipe = "half-band shift";
    }
    const CardinalityResult check = cardinality(w.ordinate, budget);
    if (check.kind != CardinalityResult::Kind::Exact || check.count != w.target_cardinality)
      throw std::logic_error("construct_witness: engine failed to validate the construction");
    return w;
  }

 private:
  struct Count {
    enum class Kind { Exact, Infinite, AtLeast } kind = Kind::Exact;
    unsigned long long value = 0;
    std::vector<std::string> certs;  // closing rules, in first-use order
  };

  std::map<Rational, Count> memo0_;
  std::set<Rational> on_stack_;
  long fuel_ = 0;

  void begin_call(long budget) {
    if (budget < 1) throw std::invalid_argument("budget must be positive");
    fuel_ = budget;
    on_stack_.clear();
  }

  static void note(Count& c, const std::string& cert) {
    if (std::find(c.certs.begin(), c.certs.end(), cert) == c.certs.end()) c.certs.push_back(cert);
  }

  static std::string joined_certificates(const Count& c) {
    std::string s;
    for (const auto& t : c.certs) {
      if (!s.empty()) s += "; ";
      s += t;
    }
    return s;
  }

  static Count add(const Count& a, const Count& b) {
    Count out;
    if (a.kind == Count::Kind::Infinite || b.kind == Count::Kind::Infinite)
      out.kind = Count::Kind::Infinite;
    else if (a.kind == Count::Kind::Exact && b.kind == Count::Kind::Exact)
      out.kind = Count::Kind::Exact;
    else
      out.kind = Count::Kind::AtLeast;
    out.value = a.value + b.value;
    out.certs = a.certs;
    for (const auto& t : b.certs) note(out, t);
    return out;
  }

  /// |L(y)| for any y >= 0; empty above the maximum 2/3.
  Count count_full(const Rational& y) {
    if (y > Rational(2, 3)) return {Count::Kind::Exact, 0, {}};
    if (2 * y == 1) return {Count::Kind::Infinite, 0, {"half ordinate"}};
    Count c = count0(y);
    c.value *= 2;
    return c;
  }

  /// |L0(y)|, the count restricted to [0, 1/2].
  Count count0(const Rational& y) {
    if (y == 0) return {Count::Kind::Exact, 1, {}};
    if (2 * y == 1) return {Count::Kind::Infinite, 0, {"half ordinate"}};
    if (auto it = memo0_.find(y); it != memo0_.end()) return it->second;
    if (on_stack_.count(y)) {
      // Re-entering an ordinate that is still being expanded means its own
      // equation reads n = n + (positive), which has no finite solution.
      memo0_[y] = {Count::Kind::Infinite, 0, {"recursive ordinate cycle"}};
      return memo0_[y];
    }
    if (--fuel_ < 0) return {Count::Kind::AtLeast, 1, {"budget exhausted"}};
    on_stack_.insert(y);
    Count result{Count::Kind::Exact, 0, {}};

    if (2 * y > 1) {
      const Rational base = 4 * y - 2;
      for (Rational z = base; z <= Rational(2, 3); z *= 4) result = add(result, count_full(z));
      note(result, "set-equation recursion");
    } else {
      const int k = band_index(y);
      const Rational offset = y - band_floor(k);
      if (offset == 0) {
        result = {Count::Kind::Infinite, 0, {"band floor hit"}};
      } else {
        const long walk_budget = std::max<long>(fuel_, 1);
        const TwoPointResult tp = detail::two_point_walk(y, walk_budget);
        fuel_ -= tp.steps;
        if (tp.answer == TwoPointAnswer::Yes) {
          result = {Count::Kind::Exact, 1, {tp.certificate}};
        } else {
          result = count0(4 * offset);
          const Rational base = pow4r(k) * offset;
          for (Rational z = base; z <= Rational(2, 3); z *= 4) result = add(result, count_full(z));
          note(result, "set-equation recursion");
        }
      }
    }

    on_stack_.erase(y);
    if (result.kind != Count::Kind::AtLeast) memo0_[y] = result;
    return result;
  }

  /// Leftmost solution of T(x) = y for an ordinate whose restricted level set
  /// is a single point. The orbit walk emits band indices until it either
  /// terminates, cycles (periodic expansion), or locks into the +1 ladder,by
  /// which point the remaining tail has the closed form 4^{-i} * (8/7) * 2^{-k}.
  Rational leftmost_solution(const Rational& y) {
    TakagiExpansion e;
    std::map<Rational, std::size_t> seen;
    Rational cur = y;
    while (true) {
      if (cur == 0) {
        e.tail = Tail::Terminated;
        return to_abscissa(e);
      }
      if (auto it = seen.find(cur); it != seen.end()) {
        e.tail = Tail::Periodic;
        e.cycle_entry = it->second;
        return to_abscissa(e);
      }
      const int k = band_index(cur);
      if (detail::plus_one_ladder(cur, k)) {
        Rational x = 0;
        for (std::size_t i = 0; i < e.terms.size(); ++i)
          x += pow2r(-(static_cast<long>(e.terms[i]) + 2 * static_cast<long>(i)));
        x += pow4r(-static_cast<long>(e.terms.size())) * Rational(8, 7) * pow2r(-k);
        return x;
      }
      if (--fuel_ < 0)
        throw std::runtime_error("leftmost_solution: budget exhausted before an exact closure");
      seen.emplace(cur, e.terms.size());
      e.terms.push_back(k);
      cur = 4 * (cur - band_floor(k));
    }
  }

  std::vector<Rational> points_full(const Rational& y) {
    std::vector<Rational> pts = points0(y);
    const std::size_t n = pts.size();
    pts.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(1 - pts[i]);
    return pts;
  }

  std::vector<Rational> points0(const Rational& y) {
    if (y == 0) return {Rational(0)};
    std::vector<Rational> pts;
    if (2 * y > 1) {
      const Rational base = 4 * y - 2;
      int j = 0;
      for (Rational z = base; z <= Rational(2, 3); z *= 4, ++j) {
        const AffineMap g = g_map(1, j);
        for (const Rational& x : points_full(z)) pts.push_back(g(x));
      }
      return pts;
    }
    const int k = band_index(y);
    const Rational offset = y - band_floor(k);
    const TwoPointResult tp = detail::two_point_walk(y, std::max<long>(fuel_, 1));
    if (tp.answer == TwoPointAnswer::Yes) {
      const Rational x = leftmost_solution(y);
      if (takagi_eval(x) != y) throw std::logic_error("points0: leftmost solution fails T(x)=y");
      return {x};
    }
    const AffineMap f = f_map(k);
    for (const Rational& x : points0(4 * offset)) pts.push_back(f(x));
    const Rational base = pow4r(k) * offset;
    int j = 0;
    for (Rational z = base; z <= Rational(2, 3); z *= 4, ++j) {
      const AffineMap g = g_map(k, j);
      for (const Rational& x : points_full(z)) pts.push_back(g(x));
    }
    return pts;
  }
};

/// Open interval in band 3 whose ordinates realize level sets of cardinality
/// 2^m + 2 once the residual chain lands on certified two-point material.
inline std::pair<Rational, Rational> sum_family_interval(int m) {
  if (m < 2) throw std::domain_error("sum_family_interval: m must be >= 2");
  Rational lo = Rational(3, 8), hi = Rational(3, 8);
  for (int j = 1; j <= m - 2; ++j) lo += pow2r(-(2 * j + 5));
  lo += 3 * pow2r(-(2 * m + 5));
  for (int j = 1; j <= m - 1; ++j) hi += pow2r(-(2 * j + 5));
  return {lo, hi};
}

/// Open interval in band 3 whose ordinates realize level sets of cardinality
/// 2^m - 2; the residual map sends each such interval onto the next one down.
inline std::pair<Rational, Rational> difference_family_interval(int m) {
  if (m < 2) throw std::domain_error("difference_family_interval: m must be >= 2");
  Rational lo = 0, hi = 0;
  for (int j = 0; j <= m - 2; ++j) lo += Rational(3, 8) * pow2r(-6 * j);
  for (int j = 0; j <= m - 3; ++j) hi += Rational(3, 8) * pow2r(-6 * j);
  hi += pow2r(-(6 * (m - 2) + 1));
  return {lo, hi};
}

/// Exact verification of the band-index pattern underlying the 2^m - 2
/// construction, for y strictly inside the m-th difference-family interval:
/// each residual iterate z_i = residual^i(y), i <= m-5, has shift itinerary
/// (9,9,9,8,7,8) with all residuals above 2/3 and satisfies
/// shift^7(z_i) = shift(z_{i+2}); the deepest two iterates satisfy the
/// shorter pattern (9,9,9,8,7) and a single index-9 step.
inline bool verify_difference_family_claims(int m, const Rational& y) {
  if (m < 5) throw std::domain_error("verify_difference_family_claims: m must be >= 5");
  const auto [lo, hi] = difference_family_interval(m);
  if (!(lo < y && y < hi))
    throw std::domain_error("verify_difference_family_claims: ordinate outside the interval");
  const Rational two_thirds(2, 3);

  std::vector<Rational> z{y};
  for (int i = 1; i <= m - 3; ++i) z.push_back(phi_map(z.back()));

  static constexpr int kPattern6[6] = {9, 9, 9, 8, 7, 8};
  for (int i = 0; i <= m - 5; ++i) {
    if (band_index(z[i]) != 3) return false;
    Rational w = z[i];
    for (int j = 0; j < 6; ++j) {
      w = psi(w);
      if (band_index(w) != kPattern6[j]) return false;
      if (phi_map(w) <= two_thirds) return false;
    }
    if (psi_iterate(z[i], 7) != psi(z[i + 2])) return false;
  }

  static constexpr int kPattern5[5] = {9, 9, 9, 8, 7};
  {
    if (band_index(z[m - 4]) != 3) return false;
    Rational w = z[m - 4];
    for (int j = 0; j < 5; ++j) {
      w = psi(w);
      if (band_index(w) != kPattern5[j]) return false;
      if (phi_map(w) <= two_thirds) return false;
    }
  }
  if (band_index(z[m - 3]) != 3) return false;
  return band_index(psi(z[m - 3])) == 9;
}

}  // namespace takagi
