#include <doctest.h>

#include <random>
#include <sstream>
#include <stdexcept>

#include "rendezvous/rational.hpp"
#include "test_support.hpp"

using rendezvous::Rational;

TEST_CASE("parse accepts integers, fractions and decimals") {
    CHECK(Rational::parse("12") == Rational(12));
    CHECK(Rational::parse("3/2") == Rational(3, 2));
    CHECK(Rational::parse("-6/4") == Rational(-3, 2));
    CHECK(Rational::parse("1.25") == Rational(5, 4));
    CHECK(Rational::parse("-0.5") == Rational(-1, 2));
    CHECK(Rational::parse("+7") == Rational(7));
}

TEST_CASE("parse rejects malformed text") {
    for (const char* bad : {"", "abc", "1/0", "1/", "/2", "1.2.3", "2/3/4", " 1"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(Rational::parse(bad), std::invalid_argument);
    }
}

TEST_CASE("str and fraction_str") {
    CHECK(Rational(8).str() == "8");
    CHECK(Rational(7, 2).str() == "7/2");
    CHECK(Rational(8).fraction_str() == "8/1");
    CHECK(Rational(-3, 6).fraction_str() == "-1/2");
    std::ostringstream os;
    os << Rational(400, 11);
    CHECK(os.str() == "400/11");
}

TEST_CASE("printing then parsing is the identity") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const Rational x = rendezvous::testing::random_rational(rng, Rational(-50), Rational(50));
        CHECK(Rational::parse(x.str()) == x);
        CHECK(Rational::parse(x.fraction_str()) == x);
    }
}

TEST_CASE("floor, ceil and mod") {
    CHECK(floor(Rational(7, 2)) == Rational(3));
    CHECK(floor(Rational(-7, 2)) == Rational(-4));
    CHECK(ceil(Rational(7, 2)) == Rational(4));
    CHECK(ceil(Rational(-7, 2)) == Rational(-3));
    CHECK(mod(Rational(13), Rational(10)) == Rational(3));
    CHECK(mod(Rational(-1, 2), Rational(10)) == Rational(19, 2));
    CHECK(mod(Rational(20), Rational(10)) == Rational(0));
}

TEST_CASE("division by zero throws") {
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("simplest_between") {
    CHECK(simplest_between(Rational(3, 10), Rational(4, 10)) == Rational(1, 3));
    CHECK(simplest_between(Rational(2), Rational(3)) == Rational(2));
    CHECK(simplest_between(Rational(5, 2), Rational(5, 2)) == Rational(5, 2));
    CHECK(simplest_between(Rational(-4, 10), Rational(-3, 10)) == Rational(-1, 3));
    const Rational eps(1, 1000000);
    CHECK(simplest_between(Rational(4) - eps, Rational(4) + eps) == Rational(4));
    CHECK(simplest_between(Rational(360, 11) - eps, Rational(360, 11) + eps) == Rational(360, 11));
}

TEST_CASE("simplest_between stays inside the interval") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        Rational a = rendezvous::testing::random_rational(rng, Rational(-20), Rational(20));
        Rational b = rendezvous::testing::random_rational(rng, Rational(-20), Rational(20));
        if (b < a) std::swap(a, b);
        const Rational s = simplest_between(a, b);
        CHECK(a <= s);
        CHECK(s <= b);
    }
}
