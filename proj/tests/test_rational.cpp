#include "doctest.h"
#include "goodred/rational.hpp"

using namespace goodred;

TEST_CASE("rational arithmetic and normalization") {
    Rational a(1, 2), b(1, 3);
    CHECK(a + b == Rational(5, 6));
    CHECK(a * b == Rational(1, 6));
    CHECK(a - b == Rational(1, 6));
    CHECK(a / b == Rational(3, 2));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(7, 3).floor() == 2);
    CHECK(Rational(-7, 3).floor() == -3);
    CHECK(Rational(7, 3).ceil() == 3);
    CHECK(Rational(5, 6).str() == "5/6");
    CHECK(Rational(-4).str() == "-4");
}

TEST_CASE("rational comparisons") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(1, 3));
    CHECK(Rational(2, 3) > Rational(1, 2));
    CHECK(Rational(2, 6) <= Rational(1, 3));
}

TEST_CASE("division by zero throws") {
    CHECK_THROWS_AS(Rational(1) / Rational(0), DivisionByZero);
    CHECK_THROWS_AS(Rational(1, 0), DivisionByZero);
}

TEST_CASE("overflow is detected") {
    Rational big(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(big * big, OverflowError);
}

TEST_CASE("valuation ordering with infinity") {
    Valuation inf = Valuation::infinity();
    Valuation v(Rational(3, 2));
    CHECK(v < inf);
    CHECK(inf == Valuation::infinity());
    CHECK(!(inf < inf));
    CHECK(v + v == Valuation(Rational(3)));
    CHECK((v + inf).is_inf());
}
