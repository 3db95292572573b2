#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "engelfn/engel.hpp"
#include "test_util.hpp"

#include <map>

using namespace engelfn;
using namespace engelfn::testutil;

TEST_CASE("digits of the unit and of simple rationals") {
    CHECK(digits_of(Rat(1)) == DigitStream::e_rational({}));
    CHECK(digits_of(Rat(1, 2)) == DigitStream::e_rational({1}));
    CHECK(digits_of(Rat(1, 2)).str() == "1 (0)");
    CHECK(digits_of(Rat(5, 6)) == DigitStream::e_rational({0, 0, 2}));
    CHECK(digits_of(Rat(3, 4)) == DigitStream::e_rational({0, 1}));
}

TEST_CASE("digits_of rejects bad input") {
    CHECK_THROWS_AS(digits_of(Rat(0)), std::domain_error);
    CHECK_THROWS_AS(digits_of(Rat(-1, 2)), std::domain_error);
    CHECK_THROWS_AS(digits_of(Rat(3, 2)), std::domain_error);
    CHECK_THROWS_AS(digits_of(Rat(1, 2), 0), std::invalid_argument);
}

TEST_CASE("deep expansions truncate at max_digits") {
    // the value of a 20-digit stream has a 20-step expansion
    const Rat x = value_of_e_rational(DigitStream::e_rational(std::vector<Digit>(20, 1)));
    auto d = digits_of(x, 16);
    CHECK_FALSE(d.has_period());
    CHECK(d.truncation_depth() == 16);
    CHECK(d.first_digits(16) == std::vector<Digit>(16, 1));
    auto v = value_of(d);
    const auto& iv = std::get<RationalInterval>(v);
    CHECK(iv.contains(x));
    CHECK(digits_of(x, 64) == DigitStream::e_rational(std::vector<Digit>(20, 1)));
}

TEST_CASE("value of E-rational streams") {
    CHECK(value_of_e_rational(DigitStream::e_rational({})) == 1);
    CHECK(value_of_e_rational(DigitStream::e_rational({1})) == Rat(1, 2));
    CHECK(value_of_e_rational(DigitStream::e_rational({0, 0, 2})) == Rat(5, 6));
    CHECK_THROWS_AS(value_of_e_rational(DigitStream::periodic({}, {1})), std::invalid_argument);
}

TEST_CASE("series partial sums converge to the closed-form value from below") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 50; ++it) {
        auto d = random_e_rational(rng);
        const Rat v = value_of_e_rational(d);
        const Rat partial = oracle_partial_sum(d, 60);
        CHECK(v > partial);
        CHECK(v - partial <= make_rat(1, Int(1) << 60));
    }
}

TEST_CASE("digit extraction agrees with the cylinder-membership oracle") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 100; ++it) {
        const Rat x = random_rational(rng, 5000);
        auto d = digits_of(x, 24);
        const std::size_t depth = std::min<std::size_t>(24, 10);
        CHECK(d.first_digits(depth) == oracle_digits_by_cylinder(x, depth));
    }
}

TEST_CASE("roundtrip: value_of(digits_of(x)) recovers x or brackets it") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 400; ++it) {
        const Rat x = random_rational(rng);
        auto d = digits_of(x, 64);
        auto v = value_of(d);
        if (d.has_period()) {
            CHECK(std::get<Rat>(v) == x);
        } else {
            CHECK(std::get<RationalInterval>(v).contains(x));
        }
    }
}

TEST_CASE("uniqueness: distinct rationals never share a periodic stream") {
    std::mt19937_64 rng(17);
    std::map<std::string, Rat> seen;
    for (int it = 0; it < 300; ++it) {
        const Rat x = random_rational(rng, 2000);
        auto d = digits_of(x, 64);
        if (!d.has_period()) continue;
        auto [pos, inserted] = seen.emplace(d.str(), x);
        if (!inserted) CHECK(pos->second == x);
    }
}

TEST_CASE("value of a general periodic stream is a certified enclosure") {
    // (1): q_n = n + 2, an irrational point; enclosure must be thin and
    // consistent with explicit partial sums.
    auto d = DigitStream::periodic({}, {1});
    auto v = value_of(d);
    const auto& iv = std::get<RationalInterval>(v);
    const Rat partial = oracle_partial_sum(d, 40);
    CHECK(iv.lo <= partial + make_rat(1, Int(1) << 38));
    CHECK(partial < iv.hi);
    CHECK(iv.width() < make_rat(1, Int(1) << 40));
}

TEST_CASE("theta merges the first two symbols") {
    CHECK(theta(Rat(1)) == 1);
    CHECK(theta(Rat(1, 2)) == Rat(1, 2));
    CHECK(theta(Rat(5, 6)) == Rat(2, 3));
    CHECK_THROWS_AS(theta(Rat(0)), std::domain_error);

    std::mt19937_64 rng(19);
    for (int it = 0; it < 100; ++it) {
        const Rat x = random_rational(rng, 400);
        auto d = digits_of(x, 512);
        REQUIRE(d.has_period());  // small numerators terminate quickly
        std::vector<Digit> merged = d.prefix();
        if (merged.size() < 2) merged.resize(2, 0);
        merged[1] += merged[0];
        merged.erase(merged.begin());
        CHECK(theta(x) == value_of_e_rational(DigitStream::e_rational(merged)));
    }
}

TEST_CASE("first_digit matches digits_of") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 200; ++it) {
        const Rat x = random_rational(rng);
        CHECK(first_digit(x) == digits_of(x, 4).digit(0));
    }
}

TEST_CASE("oversized first symbols are rejected rather than truncated") {
    // x so small that g_1 would not fit a 64-bit digit
    Int huge;
    mpz_ui_pow_ui(huge.get_mpz_t(), 2, 80);
    CHECK_THROWS_AS(digits_of(make_rat(1, huge)), std::domain_error);
    CHECK(digits_of(make_rat(1, Int(1000000))).digit(0) == 999999);
}

TEST_CASE("shifting the digits equals the digits of the shifted point") {
    std::mt19937_64 rng(127);
    for (int it = 0; it < 120; ++it) {
        const Rat x = random_rational(rng, 400);
        auto d = digits_of(x, 512);
        REQUIRE(d.has_period());
        auto shifted = d.shift();
        const Rat xprime = value_of_e_rational(shifted);
        CHECK(digits_of(xprime, 512) == shifted);
        // no affine relation between x and x' is asserted: the shift is not
        // piecewise linear in x (only the digit-merging map theta is)
    }
}
