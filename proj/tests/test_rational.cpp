#include <catch2/catch_amalgamated.hpp>

#include "linerec/rational.hpp"

using namespace linerec;

TEST_CASE("rational parsing and printing round-trip") {
    CHECK(rat_to_string(rat_parse("3")) == "3");
    CHECK(rat_to_string(rat_parse("-7")) == "-7");
    CHECK(rat_to_string(rat_parse("1/2")) == "1/2");
    CHECK(rat_to_string(rat_parse("6/4")) == "3/2");
    CHECK(rat_to_string(rat_parse("-2/4")) == "-1/2");
    CHECK(rat_to_string(rat_parse("0/5")) == "0");
    CHECK(rat_to_string(rat_parse("123456789123456789/2")) == "123456789123456789/2");
}

TEST_CASE("rational parsing rejects malformed input") {
    CHECK_THROWS_AS(rat_parse(""), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("1/"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("/2"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("1.5"), std::invalid_argument);
}

TEST_CASE("rational arithmetic is exact") {
    Rational a = rat_parse("1/3"), b = rat_parse("1/6");
    CHECK(a + b == rat_parse("1/2"));
    CHECK(a - b == rat_parse("1/6"));
    CHECK(a * b == rat_parse("1/18"));
    CHECK(a / b == Rational(2));
    // a sum that would drift in floating point
    Rational s = 0;
    for (int i = 0; i < 300; ++i) s += Rational(1, 3);
    CHECK(s == Rational(100));
}

TEST_CASE("numerator, denominator and absolute value") {
    Rational r = rat_parse("-6/4");
    CHECK(rat_num(r) == -3);
    CHECK(rat_den(r) == 2);
    CHECK(rat_abs(r) == rat_parse("3/2"));
    CHECK(rat_abs(Rational(5)) == Rational(5));
    CHECK(rat_abs(Rational(0)) == Rational(0));
}

TEST_CASE("denominator is normalized positive") {
    Rational r = rat_parse("3/-6");
    CHECK(rat_den(r) == 2);
    CHECK(rat_num(r) == -1);
    Rational q = Rational(1) / Rational(-2);
    CHECK(rat_den(q) == 2);
    CHECK(rat_num(q) == -1);
}

TEST_CASE("double conversion is close") {
    CHECK(rat_to_double(rat_parse("1/2")) == Catch::Approx(0.5));
    CHECK(rat_to_double(rat_parse("-10/4")) == Catch::Approx(-2.5));
}
