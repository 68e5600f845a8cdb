#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "takagi/rational.hpp"

namespace takagi {

/// Sentinel band index for y = 0 (the expansion convention treats trailing
/// zero ordinates as index infinity).
inline constexpr int kBandInfinity = std::numeric_limits<int>::max();

/// Left endpoint k/2^k of the k-th band. Strictly decreasing for k >= 2.
inline Rational band_floor(int k) {
  if (k < 1) throw std::domain_error("band_floor: k must be >= 1");
  return Rational(Integer(k), Integer(1) << static_cast<unsigned long>(k));
}

/// The band [t_k, t_{k-1}) for k >= 3; band 2 is the closed [1/2, 2/3].
struct Band {
  int k;
  Rational lower;
  Rational upper;
  bool closed_upper;
};

inline Band band(int k) {
  if (k < 2) throw std::domain_error("band: k must be >= 2");
  if (k == 2) return {2, Rational(1, 2), Rational(2, 3), true};
  return {k, band_floor(k), band_floor(k - 1), false};
}

/// Band index of y in [0, 2/3]: the unique k with y in I_k, or kBandInfinity
/// for y = 0.
inline int band_index(const Rational& y) {
  if (y < 0 || y > Rational(2, 3)) throw std::domain_error("band_index: argument outside [0,2/3]");
  if (y == 0) return kBandInfinity;
  if (2 * y >= 1) return 2;
  int k = 3;
  while (y < band_floor(k)) ++k;
  return k;
}

/// One step of the band shift map: 4(y - t_k) on band k, fixing 0.
/// Maps [0, 2/3] onto itself and [0, 1/2) onto itself.
inline Rational psi(const Rational& y) {
  const int k = band_index(y);
  if (k == kBandInfinity) return Rational(0);
  return 4 * (y - band_floor(k));
}

inline Rational psi_iterate(Rational y, long n) {
  for (long i = 0; i < n; ++i) y = psi(y);
  return y;
}

/// Full-strength offset map: 0 at 0, 4^k(y - t_k) on band k >= 3, and
/// 4(y - 1/2) for y >= 1/2. Defined for all y >= 0.
inline Rational phi_map(const Rational& y) {
  if (y < 0) throw std::domain_error("phi_map: negative argument");
  if (y == 0) return Rational(0);
  if (2 * y >= 1) return 4 * y - 2;
  const int k = band_index(y);
  return pow4r(k) * (y - band_floor(k));
}

enum class Tail { Terminated, Periodic, Truncated };

/// Takagi expansion [k0, k1, ...] of an ordinate: the itinerary of its orbit
/// under the band shift map. Terminated encodes a trailing run of infinity
/// terms (the orbit hit 0). For Periodic tails, terms[cycle_entry..] is one
/// full cycle.
struct TakagiExpansion {
  std::vector<int> terms;
  Tail tail = Tail::Terminated;
  std::size_t cycle_entry = 0;
};

inline std::string to_string(const TakagiExpansion& e) {
  std::string s = "[";
  const std::size_t prefix = (e.tail == Tail::Periodic) ? e.cycle_entry : e.terms.size();
  for (std::size_t i = 0; i < prefix; ++i) {
    if (i) s += ',';
    s += std::to_string(e.terms[i]);
  }
  if (e.tail == Tail::Periodic) {
    if (prefix) s += ',';
    s += '(';
    for (std::size_t i = e.cycle_entry; i < e.terms.size(); ++i) {
      if (i > e.cycle_entry) s += ' ';
      s += std::to_string(e.terms[i]);
    }
    s += ')';
  } else if (e.tail == Tail::Truncated) {
    if (!e.terms.empty()) s += ',';
    s += '?';
  }
  s += ']';
  return s;
}

/// Relaxed admissibility: every term >= 2 and each term drops by at most one.
inline bool relaxed_admissible(const TakagiExpansion& e) {
  const auto& t = e.terms;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 2) return false;
    if (i + 1 < t.size() && t[i + 1] < t[i] - 1) return false;
  }
  if (e.tail == Tail::Periodic) {
    if (e.cycle_entry >= t.size()) return false;
    if (t[e.cycle_entry] < t.back() - 1) return false;
  }
  return true;
}

/// Canonical admissibility adds: once a term reaches 3 or more, no later term
/// returns to 2.
inline bool canonical_admissible(const TakagiExpansion& e) {
  if (!relaxed_admissible(e)) return false;
  const auto& t = e.terms;
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (t[i] >= 3 && t[i + 1] < 3) return false;
  if (e.tail == Tail::Periodic && !t.empty())
    if (t.back() >= 3 && t[e.cycle_entry] < 3) return false;
  return true;
}

/// Canonical expansion of y in [0, 2/3]: terms k_n = band index of the n-th
/// shift iterate. The exact orbit either hits 0 (Terminated), revisits a
/// value (Periodic, with the entry index of the first visit), or is cut off
/// at max_terms (Truncated: no exactness certificate).
inline TakagiExpansion canonical_expansion(const Rational& y, std::size_t max_terms = 64) {
  if (max_terms < 1) throw std::invalid_argument("canonical_expansion: max_terms must be >= 1");
  if (y < 0 || y > Rational(2, 3))
    throw std::domain_error("canonical_expansion: argument outside [0,2/3]");
  TakagiExpansion e;
  std::map<Rational, std::size_t> seen;
  Rational cur = y;
  while (e.terms.size() < max_terms) {
    if (cur == 0) {
      e.tail = Tail::Terminated;
      return e;
    }
    if (auto it = seen.find(cur); it != seen.end()) {
      e.tail = Tail::Periodic;
      e.cycle_entry = it->second;
      return e;
    }
    seen.emplace(cur, e.terms.size());
    const int k = band_index(cur);
    e.terms.push_back(k);
    cur = 4 * (cur - band_floor(k));
  }
  e.tail = Tail::Truncated;
  return e;
}

namespace detail {
inline void require_exact_tail(const TakagiExpansion& e, const char* who) {
  if (e.tail == Tail::Truncated)
    throw std::domain_error(std::string(who) + ": truncated expansion has no exact value");
  if (!relaxed_admissible(e)) throw std::domain_error(std::string(who) + ": inadmissible expansion");
}
}  // namespace detail

/// y = sum of t_{k_n} / 4^n, with the periodic tail summed in closed form.
inline Rational to_ordinate(const TakagiExpansion& e) {
  detail::require_exact_tail(e, "to_ordinate");
  const std::size_t prefix = (e.tail == Tail::Periodic) ? e.cycle_entry : e.terms.size();
  Rational y = 0;
  for (std::size_t i = 0; i < prefix; ++i) y += band_floor(e.terms[i]) * pow4r(-static_cast<long>(i));
  if (e.tail == Tail::Periodic) {
    const long p = static_cast<long>(e.terms.size() - e.cycle_entry);
    Rational cycle = 0;
    for (std::size_t j = e.cycle_entry; j < e.terms.size(); ++j)
      cycle += band_floor(e.terms[j]) * pow4r(-static_cast<long>(j - e.cycle_entry));
    y += pow4r(-static_cast<long>(e.cycle_entry)) * cycle / (1 - pow4r(-p));
  }
  return y;
}

/// x = sum of 2^{-(k_n + 2n)}: the leftmost solution of T(x) = ordinate.
inline Rational to_abscissa(const TakagiExpansion& e) {
  detail::require_exact_tail(e, "to_abscissa");
  const std::size_t prefix = (e.tail == Tail::Periodic) ? e.cycle_entry : e.terms.size();
  Rational x = 0;
  for (std::size_t i = 0; i < prefix; ++i)
    x += pow2r(-(static_cast<long>(e.terms[i]) + 2 * static_cast<long>(i)));
  if (e.tail == Tail::Periodic) {
    const long p = static_cast<long>(e.terms.size() - e.cycle_entry);
    Rational cycle = 0;
    for (std::size_t j = e.cycle_entry; j < e.terms.size(); ++j)
      cycle += pow2r(-(static_cast<long>(e.terms[j]) + 2 * static_cast<long>(j)));
    x += cycle / (1 - pow4r(-p));
  }
  return x;
}

/// An expansion together with the solution it generates, when the tail is
/// exact. Truncated expansions carry no abscissa.
struct SolvedExpansion {
  TakagiExpansion expansion;
  std::optional<Rational> abscissa;
};

namespace detail {

/// Materializes terms up to `limit`, unrolling a periodic tail.
inline std::vector<int> materialize_terms(const TakagiExpansion& e, std::size_t limit) {
  std::vector<int> out(e.terms.begin(), e.terms.end());
  if (e.tail == Tail::Periodic) {
    const std::size_t p = e.terms.size() - e.cycle_entry;
    while (out.size() < limit) out.push_back(out[out.size() - p]);
  }
  if (out.size() > limit) out.resize(limit);
  return out;
}

}  // namespace detail

/// All distinct expansions of y reachable from the canonical one by at most
/// `depth` applications of the tail-splice rewrite. At any position n whose
/// residual v = 4^{k_n}(y_n - t_{k_n}) does not exceed 2/3, the tail from n
/// may be replaced by the descending run k_n+1, k_n, ..., 2 followed by the
/// canonical expansion of v. Exploration is breadth first by rewrite count,
/// positions ascending, and results are deduplicated; each expansion with an
/// exact tail is paired with its abscissa.
inline std::vector<SolvedExpansion> alternative_expansions(const Rational& y, int depth,
                                                           std::size_t max_terms = 64) {
  if (depth < 0) throw std::invalid_argument("alternative_expansions: negative depth");
  if (y < 0 || y > Rational(2, 3))
    throw std::domain_error("alternative_expansions: argument outside [0,2/3]");
  const Rational two_thirds(2, 3);

  std::vector<TakagiExpansion> results{canonical_expansion(y, max_terms)};
  std::set<std::string> seen{to_string(results.front())};

  std::size_t level_begin = 0;
  for (int r = 0; r < depth; ++r) {
    const std::size_t level_end = results.size();
    for (std::size_t idx = level_begin; idx < level_end; ++idx) {
      const TakagiExpansion parent = results[idx];
      const auto terms = detail::materialize_terms(parent, max_terms);
      Rational cur = y;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const int k = terms[i];
        const Rational offset = cur - band_floor(k);
        const Rational v = pow4r(k) * offset;
        if (v <= two_thirds) {
          TakagiExpansion child;
          child.terms.assign(terms.begin(), terms.begin() + static_cast<long>(i));
          for (int run = k + 1; run >= 2; --run) child.terms.push_back(run);
          if (child.terms.size() >= max_terms) {
            child.terms.resize(max_terms);
            child.tail = Tail::Truncated;
          } else {
            const TakagiExpansion tail_exp =
                canonical_expansion(v, max_terms - child.terms.size());
            const std::size_t base = child.terms.size();
            child.terms.insert(child.terms.end(), tail_exp.terms.begin(), tail_exp.terms.end());
            child.tail = tail_exp.tail;
            if (child.tail == Tail::Periodic) child.cycle_entry = base + tail_exp.cycle_entry;
          }
          if (seen.insert(to_string(child)).second) results.push_back(child);
        }
        cur = 4 * offset;
      }
    }
    level_begin = level_end;
    if (level_begin == results.size()) break;  // no new expansions at this depth
  }

  std::vector<SolvedExpansion> out;
  out.reserve(results.size());
  for (auto& e : results) {
    SolvedExpansion s{e, std::nullopt};
    if (e.tail != Tail::Truncated) s.abscissa = to_abscissa(e);
    out.push_back(std::move(s));
  }
  return out;
}

/// Fixed point y_k* = k/(3*2^{k-2}) of the band-k shift. Only bands k >= 4
/// have one below 1/2.
struct FixedPoint {
  int k;
  Rational value;
};

inline FixedPoint fixed_point(int k) {
  if (k < 4) throw std::domain_error("fixed_point: band shift has no fixed point for k < 4");
  return {k, Rational(Integer(k), Integer(3) << static_cast<unsigned long>(k - 2))};
}

}  // namespace takagi
