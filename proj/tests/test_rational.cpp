#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "takagi/rational.hpp"

using namespace takagi;

TEST_CASE("rational serialization round trip", "[rational]") {
  CHECK(to_string(Rational(0)) == "0");
  CHECK(to_string(Rational(22, 49)) == "22/49");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(to_string(Rational(-3, 6)) == "-1/2");

  CHECK(parse_rational("0") == 0);
  CHECK(parse_rational("22/49") == Rational(22, 49));
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("7") == 7);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const long q = std::uniform_int_distribution<long>(1, 1'000'000)(rng);
    const long p = std::uniform_int_distribution<long>(-q, q)(rng);
    const Rational x(p, q);
    CHECK(parse_rational(to_string(x)) == x);
  }

  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a/3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("stored form is reduced with positive denominator", "[rational]") {
  const Rational x(-6, 9);
  CHECK(rat_num(x) == -2);
  CHECK(rat_den(x) == 3);
  const Rational y = parse_rational("6/-9");
  CHECK(rat_num(y) == -2);
  CHECK(rat_den(y) == 3);
}

TEST_CASE("dyadic detection", "[rational]") {
  CHECK(is_dyadic(Rational(0)));
  CHECK(is_dyadic(Rational(3, 8)));
  CHECK(is_dyadic(Rational(7)));
  CHECK_FALSE(is_dyadic(Rational(1, 3)));
  CHECK_FALSE(is_dyadic(Rational(5, 12)));
}

TEST_CASE("floor and fractional part", "[rational]") {
  CHECK(floor_int(Rational(7, 3)) == 2);
  CHECK(floor_int(Rational(-7, 3)) == -3);
  CHECK(frac_part(Rational(7, 3)) == Rational(1, 3));
  CHECK(frac_part(Rational(-1, 4)) == Rational(3, 4));
  CHECK(frac_part(Rational(5)) == 0);
}

TEST_CASE("decimal rendering is deterministic and truncating", "[rational]") {
  CHECK(decimal_string(Rational(1, 2), 4) == "0.5000");
  CHECK(decimal_string(Rational(2, 3), 6) == "0.666666");
  CHECK(decimal_string(Rational(-1, 8), 3) == "-0.125");
}
