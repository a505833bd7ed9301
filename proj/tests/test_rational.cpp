#include <doctest.h>

#include "rtdig/rational.hpp"

#include <algorithm>
#include <limits>
#include <vector>

using rtdig::Rational;

TEST_CASE("construction canonicalizes sign and gcd") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(2, 4).num() == 1);
    CHECK(Rational(2, 4).den() == 2);

    CHECK(Rational(-2, 4).num() == -1);
    CHECK(Rational(3, -6).num() == -1);
    CHECK(Rational(3, -6).den() == 2);
    CHECK(Rational(-3, -6) == Rational(1, 2));

    CHECK(Rational(0, 7).num() == 0);
    CHECK(Rational(0, 7).den() == 1);

    CHECK(Rational(5).den() == 1);
    CHECK(Rational().num() == 0);

    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("ordering is exact") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1) < Rational(0));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(7, 10) > Rational(69, 100));
    CHECK(Rational(7, 10) <= Rational(7, 10));

    std::vector<Rational> v = {Rational(1), Rational(1, 3), Rational(0), Rational(2, 3)};
    std::sort(v.begin(), v.end());
    CHECK(v == std::vector<Rational>{Rational(0), Rational(1, 3), Rational(2, 3), Rational(1)});
}

TEST_CASE("arithmetic") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(5, 6) - Rational(1, 2) == Rational(1, 3));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(-Rational(1, 2) == Rational(-1, 2));
    CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));

    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("arithmetic overflow is detected") {
    const std::int64_t big = std::numeric_limits<std::int64_t>::max();
    CHECK_THROWS_AS(Rational(big) + Rational(1), std::overflow_error);
    CHECK_THROWS_AS(Rational(big) * Rational(2), std::overflow_error);
    // A huge intermediate that cancels is fine.
    CHECK(Rational(big) * Rational(2, big) == Rational(2));
}

TEST_CASE("floor, ceil, frac") {
    CHECK(Rational(5, 2).floor() == 2);
    CHECK(Rational(5, 2).ceil() == 3);
    CHECK(Rational(5, 2).frac() == Rational(1, 2));

    CHECK(Rational(-3, 2).floor() == -2);
    CHECK(Rational(-3, 2).ceil() == -1);
    CHECK(Rational(-3, 2).frac() == Rational(1, 2));

    CHECK(Rational(3).floor() == 3);
    CHECK(Rational(3).ceil() == 3);
    CHECK(Rational(3).frac() == Rational(0));

    CHECK(Rational(6, 5).floor() == 1);
    CHECK(Rational(6, 5).frac() == Rational(1, 5));
}

TEST_CASE("rendering") {
    CHECK(Rational(5, 2).str() == "5/2");
    CHECK(Rational(3).str() == "3");
    CHECK(Rational(-1, 2).str() == "-1/2");
    CHECK(Rational(0).str() == "0");
}

TEST_CASE("parsing accepts fractions, integers and decimals") {
    CHECK(Rational::parse("7/10") == Rational(7, 10));
    CHECK(Rational::parse("2") == Rational(2));
    CHECK(Rational::parse("+3") == Rational(3));
    CHECK(Rational::parse("-3/2") == Rational(-3, 2));
    CHECK(Rational::parse("0.7") == Rational(7, 10));
    CHECK(Rational::parse("2.75") == Rational(11, 4));
    CHECK(Rational::parse("0.250") == Rational(1, 4));
    CHECK(Rational::parse("-0.5") == Rational(-1, 2));
    CHECK(Rational::parse("4/6") == Rational(2, 3));

    // str() output parses back to the same value
    for (const Rational r : {Rational(5, 2), Rational(-7, 3), Rational(42), Rational(0)}) {
        CHECK(Rational::parse(r.str()) == r);
    }
}

TEST_CASE("parsing rejects malformed input") {
    for (const char* bad : {"", "abc", "1/", "/2", "1/2/3", "1.", ".5", "1.2.3",
                            "2 ", " 2", "1/0", "--1", "0x10"}) {
        CHECK_THROWS_AS(Rational::parse(bad), std::invalid_argument);
    }
    CHECK_THROWS_AS(Rational::parse("9999999999999999999999"), std::overflow_error);
    CHECK_THROWS_AS(Rational::parse("0.12345678901234567891"), std::overflow_error);
}

TEST_CASE("midpoint") {
    CHECK(rtdig::midpoint(Rational(0), Rational(1, 5)) == Rational(1, 10));
    CHECK(rtdig::midpoint(Rational(1, 2), Rational(1)) == Rational(3, 4));
}
