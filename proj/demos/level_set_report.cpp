// Small tour of the library: evaluates a few ordinates, classifies their
// level sets, and prints the exact solutions where the set is finite.

#include <iostream>

#include "takagi/takagi.hpp"

int main() {
  using namespace takagi;
  LevelSetEngine engine;

  const Rational ordinates[] = {Rational(1, 3),  Rational(22, 49), Rational(7, 12),
                                Rational(3, 8),  Rational(73, 192), Rational(1, 2)};
  for (const Rational& y : ordinates) {
    std::cout << "y = " << to_string(y) << "\n";
    std::cout << "  expansion: " << to_string(canonical_expansion(y)) << "\n";
    const CardinalityResult c = engine.cardinality(y);
    switch (c.kind) {
      case CardinalityResult::Kind::Exact: {
        std::cout << "  |L(y)| = " << c.count << "  [" << c.certificate << "]\n";
        const LevelSetEnumeration e = engine.enumerate_level_set(y);
        std::cout << "  points:";
        for (const Rational& x : e.points) std::cout << " " << to_string(x);
        std::cout << "\n";
        break;
      }
      case CardinalityResult::Kind::Infinite:
        std::cout << "  |L(y)| is infinite  [" << c.certificate << "]\n";
        break;
      default:
        std::cout << "  |L(y)| >= " << c.count << " (budget exhausted)\n";
        break;
    }
  }

  const MeasureBounds b = s2_measure_bounds(2, 30);
  std::cout << "two-point ordinate measure in [" << decimal_string(b.lower) << ", "
            << decimal_string(b.upper) << "]\n";
  return 0;
}
