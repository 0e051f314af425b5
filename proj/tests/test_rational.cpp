#include "doctest.h"
#include "recurlab/rational.hpp"

#include <stdexcept>

using recurlab::Rational;

TEST_SUITE("rational") {

TEST_CASE("construction reduces to lowest terms with positive denominator") {
  CHECK(Rational(6, 8) == Rational(3, 4));
  CHECK(Rational(-6, 8) == Rational(-3, 4));
  CHECK(Rational(6, -8) == Rational(-3, 4));
  CHECK(Rational(-6, -8) == Rational(3, 4));
  CHECK(Rational(0, 17) == Rational(0));
  CHECK(Rational(0, 17).den() == 1);
  CHECK(Rational(5, 1).is_integer());
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("arithmetic is exact") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  Rational s(0);
  for (int i = 0; i < 7; ++i) s += Rational(1, 7);
  CHECK(s == Rational(1));
}

TEST_CASE("comparisons use cross multiplication") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(2, 6) <= Rational(1, 3));
  CHECK(Rational(2, 6) >= Rational(1, 3));
  CHECK(Rational(7, 9) > Rational(11, 16));
  CHECK(recurlab::rat_min(Rational(3, 4), Rational(7, 9)) == Rational(3, 4));
  CHECK(recurlab::rat_max(Rational(3, 4), Rational(7, 9)) == Rational(7, 9));
}

TEST_CASE("floor, ceil and mod1 handle negatives") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(4).floor() == 4);
  CHECK(Rational(4).ceil() == 4);
  CHECK(Rational(-1, 4).mod1() == Rational(3, 4));
  CHECK(Rational(9, 4).mod1() == Rational(1, 4));
  CHECK(Rational(-2).mod1() == Rational(0));
}

TEST_CASE("ceil_div") {
  CHECK(recurlab::ceil_div(Rational(1), Rational(1, 4)) == 4);
  CHECK(recurlab::ceil_div(Rational(1), Rational(3, 10)) == 4);
  CHECK(recurlab::ceil_div(Rational(3, 8), Rational(1, 8)) == 3);
  CHECK(recurlab::ceil_div(Rational(0), Rational(1, 8)) == 0);
  CHECK_THROWS_AS(recurlab::ceil_div(Rational(1), Rational(0)), std::domain_error);
}

TEST_CASE("overflow raises PrecisionError instead of wrapping") {
  Rational big(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(big * big, recurlab::PrecisionError);
  // from128 admits intermediate products that reduce back into range.
  Rational ok = Rational::from128((__int128)INT64_MAX * 6, (__int128)INT64_MAX * 2);
  CHECK(ok == Rational(3));
}

TEST_CASE("string form") {
  CHECK(Rational(3, 4).str() == "3/4");
  CHECK(Rational(-3, 4).str() == "-3/4");
  CHECK(Rational(5).str() == "5");
}

TEST_CASE("value is the double quotient") {
  CHECK(Rational(1, 2).value() == doctest::Approx(0.5));
  CHECK(Rational(1, 3).value() == doctest::Approx(1.0 / 3.0));
}

}  // TEST_SUITE
