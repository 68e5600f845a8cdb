#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "takagi/takagi_eval.hpp"

using namespace takagi;

namespace {
Rational random_unit_rational(std::mt19937_64& rng, long max_den) {
  const long q = std::uniform_int_distribution<long>(2, max_den)(rng);
  const long p = std::uniform_int_distribution<long>(0, q)(rng);
  return Rational(p, q);
}
}  // namespace

TEST_CASE("distance to nearest integer", "[eval]") {
  CHECK(phi(Rational(1, 2)) == Rational(1, 2));
  CHECK(phi(Rational(7, 3)) == Rational(1, 3));
  CHECK(phi(Rational(0)) == 0);
  CHECK(phi(Rational(-1, 4)) == Rational(1, 4));
  CHECK(phi(Rational(9, 8)) == Rational(1, 8));
}

TEST_CASE("partial sums", "[eval]") {
  CHECK(takagi_partial(Rational(1, 4), 2).value == Rational(1, 2));
  CHECK(takagi_partial(Rational(1, 4), 2).slope == 0);
  CHECK(takagi_partial(Rational(3, 7), 0).value == 0);
  for (int k = 2; k <= 20; ++k) {
    const PartialEvaluation pe = takagi_partial(pow2r(-k), k);
    CHECK(pe.value == Rational(k) * pow2r(-k));
    CHECK(pe.slope == k - 2);
  }
  CHECK(takagi_partial(Rational(1), 5).slope == -5);
}

TEST_CASE("exact evaluation fixtures", "[eval]") {
  CHECK(takagi_eval(Rational(0)) == 0);
  CHECK(takagi_eval(Rational(1)) == 0);
  CHECK(takagi_eval(Rational(1, 2)) == Rational(1, 2));
  CHECK(takagi_eval(Rational(1, 4)) == Rational(1, 2));
  CHECK(takagi_eval(Rational(1, 7)) == Rational(22, 49));
  CHECK(takagi_eval(Rational(1, 3)) == Rational(2, 3));
  CHECK(takagi_eval(Rational(2, 3)) == Rational(2, 3));
  CHECK(takagi_eval(Rational(1, 6)) == Rational(1, 2));
  CHECK(takagi_eval(Rational(1, 12)) == Rational(1, 3));
  for (int k = 2; k <= 64; ++k) CHECK(takagi_eval(pow2r(-k)) == Rational(k) * pow2r(-k));
  CHECK_THROWS_AS(takagi_eval(Rational(3, 2)), std::domain_error);
}

TEST_CASE("functional equation and symmetry", "[eval]") {
  for (const auto& x : {Rational(0), Rational(1), Rational(1, 2), Rational(1, 3), Rational(1, 7),
                        Rational(5, 8), Rational(22, 49), Rational(777, 2048)})
    CHECK(check_functional_equation(x));

  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    const Rational x = random_unit_rational(rng, 1'000'000);
    REQUIRE(check_functional_equation(x));
  }

  // Spot check against direct evaluation on small denominators.
  std::mt19937_64 rng2(29);
  for (int i = 0; i < 100; ++i) {
    const Rational x = random_unit_rational(rng2, 2'000);
    REQUIRE(takagi_eval(x) == takagi_eval(1 - x));
    if (2 * x <= 1)
      REQUIRE(takagi_eval(x) == takagi_eval(2 * x) / 2 + x);
    else
      REQUIRE(takagi_eval(x) == takagi_eval(2 * x - 1) / 2 + 1 - x);
  }
}

TEST_CASE("range stays within [0, 2/3]", "[eval]") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 2000; ++i) {
    const Rational t = takagi_eval(random_unit_rational(rng, 10'000));
    REQUIRE(t >= 0);
    REQUIRE(t <= Rational(2, 3));
  }
}

TEST_CASE("partial sums squeeze the full value", "[eval]") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 50; ++i) {
    const Rational x = random_unit_rational(rng, 5'000);
    const Rational t = takagi_eval(x);
    for (long k = 0; k <= 30; k += 3) {
      const Rational pk = takagi_partial(x, k).value;
      REQUIRE(pk <= t);
      REQUIRE(t <= pk + Rational(2, 3) * pow2r(-k));
    }
  }
}

TEST_CASE("splitting at powers of two", "[eval]") {
  // For x in [2^-k, 2^-(k-1)], T(x) = k/2^k + T(4(x - 2^-k))/4.
  std::mt19937_64 rng(41);
  for (int k = 2; k <= 12; ++k) {
    for (int i = 0; i < 20; ++i) {
      const long d = std::uniform_int_distribution<long>(1, 9999)(rng);
      const Rational x = pow2r(-k) + Rational(d, 10'000) * pow2r(-k);
      REQUIRE(x <= pow2r(-(k - 1)));
      REQUIRE(takagi_eval(x) == Rational(k) * pow2r(-k) + takagi_eval(4 * (x - pow2r(-k))) / 4);
    }
  }
}

TEST_CASE("floor value over [2^-k, 1/2]", "[eval]") {
  std::mt19937_64 rng(43);
  for (int k = 2; k <= 10; ++k) {
    const Rational lo = pow2r(-k);
    for (int i = 0; i < 30; ++i) {
      const long d = std::uniform_int_distribution<long>(0, 10'000)(rng);
      const Rational x = lo + (Rational(1, 2) - lo) * Rational(d, 10'000);
      REQUIRE(takagi_eval(x) >= Rational(k) * pow2r(-k));
    }
  }
}

TEST_CASE("values left of the anchor stay below the floor", "[eval]") {
  std::mt19937_64 rng(47);
  for (int k = 2; k <= 10; ++k) {
    const Rational cutoff = pow2r(-k) - Rational(1, 3) * pow4r(-(k - 1));
    for (int i = 0; i < 30; ++i) {
      const long d = std::uniform_int_distribution<long>(0, 9'999)(rng);
      const Rational x = cutoff * Rational(d, 10'000);
      REQUIRE(takagi_eval(x) < Rational(k) * pow2r(-k));
    }
  }
}

TEST_CASE("balanced points carry scaled graph copies", "[eval]") {
  // Balanced x0 with 2m digits: T(x0 + 4^{-m} t) = T(x0) + 4^{-m} T(t).
  const std::pair<Rational, int> humps[] = {
      {Rational(1, 4), 1}, {Rational(5, 8), 2}, {Rational(7, 8), 3}, {Rational(9, 16), 2}};
  std::mt19937_64 rng(53);
  for (const auto& [x0, m] : humps) {
    for (int i = 0; i < 25; ++i) {
      const long q = std::uniform_int_distribution<long>(2, 500)(rng);
      const long p = std::uniform_int_distribution<long>(0, q)(rng);
      const Rational t(p, q);
      REQUIRE(takagi_eval(x0 + pow4r(-m) * t) == takagi_eval(x0) + pow4r(-m) * takagi_eval(t));
    }
  }
}

TEST_CASE("orbit cap fails loudly", "[eval]") {
  // ord of 2 modulo 97 is 48, beyond a cap of 10.
  CHECK_THROWS_AS(detail::takagi_series_parts(Rational(1, 97), 10), std::runtime_error);
  CHECK_NOTHROW(detail::takagi_series_parts(Rational(1, 97), 48));
}
