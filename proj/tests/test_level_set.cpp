#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "takagi/level_set.hpp"

using namespace takagi;

namespace {
CardinalityResult card(const Rational& y) {
  LevelSetEngine engine;
  return engine.cardinality(y);
}
bool exact(const CardinalityResult& c, unsigned long long n) {
  return c.kind == CardinalityResult::Kind::Exact && c.count == n;
}
}  // namespace

TEST_CASE("affine map anchors", "[levelset]") {
  CHECK(f_map(3)(Rational(0)) == Rational(1, 8));
  CHECK(f_map(3)(Rational(1, 2)) == Rational(1, 4));
  for (int k = 2; k <= 8; ++k) {
    for (int j = 0; j <= 4; ++j) {
      Rational anchor = pow2r(-k);
      for (int r = 0; r <= j; ++r) anchor -= pow4r(-(k + r));
      CHECK(g_map(k, j)(Rational(0)) == anchor);
      // The image of [0,1] under g_{k,j} is the j-th left-neighbor cell.
      CHECK(g_map(k, j)(Rational(1)) == (j == 0 ? pow2r(-k) : g_map(k, j - 1)(Rational(0))));
    }
  }
}

TEST_CASE("two-point decision fixtures", "[levelset]") {
  const auto yes = [](const Rational& y, const std::string& cert) {
    const TwoPointResult r = is_two_point_level_set(y);
    REQUIRE(r.answer == TwoPointAnswer::Yes);
    REQUIRE(r.certificate == cert);
  };
  yes(Rational(1, 3), "no-3-zeros tail");
  yes(Rational(1, 5), "no-3-zeros tail");
  yes(Rational(2, 5), "no-3-zeros tail");
  yes(Rational(1, 6), "no-3-zeros tail");
  yes(Rational(1, 7), "no-3-zeros tail");
  yes(Rational(2, 7), "no-3-zeros tail");
  yes(Rational(3, 7), "no-3-zeros tail");
  yes(Rational(1, 11), "orbit cycle");
  yes(Rational(22, 49), "plus-one ladder");

  for (int k = 3; k <= 10; ++k) {
    const TwoPointResult r = is_two_point_level_set(band_floor(k));
    REQUIRE(r.answer == TwoPointAnswer::No);
    REQUIRE(r.certificate == "band floor hit");
  }

  // A residual dropping to 2/3 or below refutes immediately.
  const TwoPointResult r = is_two_point_level_set(Rational(3, 8) + pow4r(-5));
  CHECK(r.answer == TwoPointAnswer::No);

  CHECK_THROWS_AS(is_two_point_level_set(Rational(0)), std::domain_error);
  CHECK_THROWS_AS(is_two_point_level_set(Rational(1, 2)), std::domain_error);
}

TEST_CASE("growth bound verdicts", "[levelset]") {
  CHECK(doubling_bound_check({4, 4, 4, 4}) == DoublingVerdict::SufficientForTwo);
  CHECK(doubling_bound_check({3, 4, 5, 6, 7, 8}) == DoublingVerdict::SufficientForTwo);
  CHECK(doubling_bound_check({7, 6, 5, 5, 6, 5, 5, 4, 4, 4}) == DoublingVerdict::SufficientForTwo);
  // 2^10 = 1024 >= 3*3*4^3 = 576 forces more than two points.
  CHECK(doubling_bound_check({3, 10}) == DoublingVerdict::NecessitatesMore);
  // 2^9 = 512 < 576 but 2^11 = 2048 > 576: neither test closes.
  CHECK(doubling_bound_check({3, 9}) == DoublingVerdict::Inconclusive);
  CHECK(doubling_bound_check({5}) == DoublingVerdict::SufficientForTwo);
}

TEST_CASE("cardinality fixtures", "[levelset]") {
  CHECK(exact(card(Rational(0)), 2));
  CHECK(card(Rational(1, 2)).kind == CardinalityResult::Kind::Infinite);
  CHECK(card(Rational(2, 3)).kind == CardinalityResult::Kind::Infinite);
  CHECK(card(Rational(19, 32)).kind == CardinalityResult::Kind::Infinite);
  for (int k = 3; k <= 8; ++k)
    CHECK(card(band_floor(k)).kind == CardinalityResult::Kind::Infinite);

  CHECK(exact(card(Rational(1, 3)), 2));
  CHECK(exact(card(Rational(22, 49)), 2));
  CHECK(exact(card(Rational(7, 12)), 4));
  CHECK(exact(card(Rational(73, 192)), 6));

  CHECK_THROWS_AS(card(Rational(3, 4)), std::domain_error);
}

TEST_CASE("cardinality certificates name the closing rules", "[levelset]") {
  LevelSetEngine engine;
  const CardinalityResult c = engine.cardinality(Rational(22, 49));
  CHECK(c.certificate == "plus-one ladder");
  const CardinalityResult d = engine.cardinality(Rational(3, 8));
  CHECK(d.certificate.find("band floor hit") != std::string::npos);
}

TEST_CASE("witness constructions close for 2n up to 16", "[levelset]") {
  LevelSetEngine engine;
  const Rational expected[] = {Rational(1, 3),    Rational(7, 12),    Rational(73, 192),
                               Rational(73, 112), Rational(289, 768), Rational(97, 192),
                               Rational(1153, 3072), Rational(297, 448)};
  for (unsigned n = 1; n <= 8; ++n) {
    const WitnessConstruction w = engine.construct_witness(n);
    CHECK(w.target_cardinality == 2 * n);
    CHECK(w.ordinate == expected[n - 1]);
  }
  CHECK_THROWS_AS(engine.construct_witness(0), std::domain_error);
}

TEST_CASE("enumeration fixtures", "[levelset]") {
  LevelSetEngine engine;

  const LevelSetEnumeration e1 = engine.enumerate_level_set(Rational(1, 3));
  CHECK(e1.points == std::vector<Rational>{Rational(1, 12), Rational(11, 12)});
  CHECK(e1.complete);

  const LevelSetEnumeration e2 = engine.enumerate_level_set(Rational(7, 12));
  CHECK(e2.points == std::vector<Rational>{Rational(13, 48), Rational(23, 48), Rational(25, 48),
                                           Rational(35, 48)});

  const LevelSetEnumeration e3 = engine.enumerate_level_set(Rational(73, 192));
  REQUIRE(e3.points.size() == 6);
  CHECK(e3.complete);
  CHECK(std::find(e3.points.begin(), e3.points.end(), Rational(1543, 12288)) != e3.points.end());

  CHECK_THROWS_AS(engine.enumerate_level_set(Rational(1, 2)), std::domain_error);
  CHECK_THROWS_AS(engine.enumerate_level_set(Rational(3, 8)), std::domain_error);
}

TEST_CASE("enumerated level sets are symmetric and even", "[levelset]") {
  LevelSetEngine engine;
  for (unsigned n = 1; n <= 8; ++n) {
    const WitnessConstruction w = engine.construct_witness(n);
    const LevelSetEnumeration e = engine.enumerate_level_set(w.ordinate);
    REQUIRE(e.points.size() == 2 * n);
    REQUIRE(e.complete);
    REQUIRE(e.points.size() % 2 == 0);
    for (const Rational& x : e.points)
      REQUIRE(std::find(e.points.begin(), e.points.end(), 1 - x) != e.points.end());
  }
}

TEST_CASE("count splits across shift and offset maps", "[levelset]") {
  // For 0 < y < 1/2 with residual above 1/6, counts obey
  // |L(y)| = |L(shift y)| + 2 |L(offset y)| whenever all three are exact.
  LevelSetEngine engine;
  for (const auto& y : {Rational(73, 192), Rational(171, 448), Rational(10923, 28672),
                        Rational(2761, 7168), Rational(689, 1792)}) {
    REQUIRE(2 * y < 1);
    REQUIRE(phi_map(y) > Rational(1, 6));
    const CardinalityResult cy = engine.cardinality(y);
    const CardinalityResult cs = engine.cardinality(psi(y));
    const CardinalityResult co = engine.cardinality(phi_map(y));
    REQUIRE(cy.kind == CardinalityResult::Kind::Exact);
    REQUIRE(cs.kind == CardinalityResult::Kind::Exact);
    REQUIRE(co.kind == CardinalityResult::Kind::Exact);
    CHECK(cy.count == cs.count + 2 * co.count);
  }
}

TEST_CASE("power-family interval samples", "[levelset]") {
  LevelSetEngine engine;
  // 2^m + 2 family: engineered samples inside the published intervals.
  const std::pair<int, Rational> sums[] = {{2, Rational(171, 448)},
                                           {3, Rational(689, 1792)},
                                           {4, Rational(2761, 7168)}};
  for (const auto& [m, y] : sums) {
    const auto [lo, hi] = sum_family_interval(m);
    REQUIRE(lo < y);
    REQUIRE(y < hi);
    CHECK(exact(engine.cardinality(y), (1ull << m) + 2));
  }
  // 2^m - 2 family.
  const std::pair<int, Rational> diffs[] = {{4, Rational(10923, 28672)},
                                            {5, Rational(699051, 1835008)}};
  for (const auto& [m, y] : diffs) {
    const auto [lo, hi] = difference_family_interval(m);
    REQUIRE(lo < y);
    REQUIRE(y < hi);
    CHECK(exact(engine.cardinality(y), (1ull << m) - 2));
  }
}

TEST_CASE("difference-family claims verify exactly", "[levelset]") {
  for (int m : {5, 6, 7}) {
    const auto [lo, hi] = difference_family_interval(m);
    const Rational mid = (lo + hi) / 2;
    CHECK(verify_difference_family_claims(m, mid));
    CHECK(verify_difference_family_claims(m, lo + (hi - lo) / 1000));
    CHECK(verify_difference_family_claims(m, hi - (hi - lo) / 1000));
  }
  const auto [lo6, hi6] = difference_family_interval(6);
  CHECK(verify_difference_family_claims(6, lo6 + pow2r(-40)));
  CHECK_THROWS_AS(verify_difference_family_claims(6, hi6 + 1), std::domain_error);
  CHECK_THROWS_AS(verify_difference_family_claims(4, Rational(3, 8)), std::domain_error);
}

TEST_CASE("budget exhaustion reports a lower bound", "[levelset]") {
  LevelSetEngine engine;
  const CardinalityResult c = engine.cardinality(Rational(97, 192), 2);
  CHECK(c.kind == CardinalityResult::Kind::AtLeast);
  CHECK(c.count >= 2);
  CHECK(c.certificate.find("budget exhausted") != std::string::npos);
}
