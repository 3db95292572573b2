#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "engelfn/engel.hpp"
#include "test_util.hpp"

using namespace engelfn;
using namespace engelfn::testutil;

TEST_CASE("endpoint formulas at small bases") {
    Cylinder root;
    CHECK(root.a() == 0);
    CHECK(root.b() == 1);
    CHECK(root.length() == 1);

    Cylinder c0({0});
    CHECK(c0.a() == Rat(1, 2));
    CHECK(c0.b() == 1);
    CHECK(c0.length() == Rat(1, 2));

    Cylinder c00({0, 0});
    CHECK(c00.a() == Rat(3, 4));
    CHECK(c00.b() == 1);

    CHECK(Cylinder({1}).length() == Rat(1, 6));
}

TEST_CASE("length equals b - a and supremum matches the E-rational value") {
    std::mt19937_64 rng(29);
    for (int it = 0; it < 200; ++it) {
        Cylinder c(random_digits(rng, 8, 10));
        CHECK(c.length() == c.b() - c.a());
        CHECK(c.b() == value_of_e_rational(c.supremum_point()));
        if (c.rank() >= 1) CHECK(c.a() == value_of_e_rational(c.infimum_point()));
    }
}

TEST_CASE("child ratios") {
    CHECK(Cylinder().child_ratio(0) == Rat(1, 2));
    CHECK(Cylinder({0}).child_ratio(0) == Rat(1, 2));
    CHECK(Cylinder({1}).child_ratio(2) == Rat(1, 10));

    std::mt19937_64 rng(31);
    for (int it = 0; it < 200; ++it) {
        Cylinder c(random_digits(rng, 6, 8));
        std::uniform_int_distribution<Digit> digit_dist(0, 8);
        const Digit next = digit_dist(rng);
        CHECK(c.child_ratio(next) == c.child(next).length() / c.length());
    }
}

TEST_CASE("children partition the parent exactly") {
    std::mt19937_64 rng(37);
    for (int it = 0; it < 50; ++it) {
        Cylinder c(random_digits(rng, 5, 6));
        Rat covered(0);
        const Digit upto = 12;
        for (Digit d = 0; d <= upto; ++d) covered += c.child(d).length();
        // children 0..C cover (a of child C, b]; the rest is the a-side sliver
        const Rat sliver = c.child(upto).a() - c.a();
        CHECK(covered + sliver == c.length());
    }
}

TEST_CASE("nesting and adjacency of children") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 100; ++it) {
        Cylinder c(random_digits(rng, 5, 6));
        std::uniform_int_distribution<Digit> digit_dist(0, 9);
        const Digit d = digit_dist(rng);
        Cylinder ch = c.child(d);
        CHECK(c.a() <= ch.a());
        CHECK(ch.b() <= c.b());
        // property 2: the supremum of child c+1 is the infimum of child c
        CHECK(c.child(d + 1).b() == ch.a());
        // top child shares the parent's supremum
        CHECK(c.child(0).b() == c.b());
    }
}

TEST_CASE("digit-prepending contracts by 1/(2+i), exactly 1/2 at i = 0") {
    std::mt19937_64 rng(43);
    for (int it = 0; it < 100; ++it) {
        Cylinder c(random_digits(rng, 5, 6));
        for (Digit i = 0; i <= 8; ++i) {
            const Rat ratio = prepend_length_ratio(c, i);
            if (i == 0)
                CHECK(ratio == Rat(1, 2));
            else
                CHECK(ratio < make_rat(1, int_of(2 + i)));
        }
    }
}

TEST_CASE("appended-digit ratio bound and its equality case") {
    std::mt19937_64 rng(47);
    for (int it = 0; it < 100; ++it) {
        Cylinder c(random_digits(rng, 5, 6));
        for (Digit i = 0; i <= 8; ++i) {
            const Rat ratio = c.child_ratio(i);
            const Rat bound = make_rat(1, int_of(2 + i));
            if (i == 0 && c.sigma() == 0)
                CHECK(ratio == bound);  // all-zero base, child 0: exactly 1/2
            else
                CHECK(ratio < bound);
            CHECK(bound <= Rat(1, 2));
        }
    }
}

TEST_CASE("intersection of nested cylinders pins the point") {
    // Delta^E_{1 0 0 ...} shrinks onto x = 1/2 from above
    Cylinder c({1});
    for (int k = 0; k < 20; ++k) c = c.child(0);
    CHECK(c.b() == Rat(1, 2));
    CHECK(c.length() < make_rat(1, Int(1) << 20));
}

TEST_CASE("root has no infimum point") {
    CHECK_THROWS_AS(Cylinder().infimum_point(), std::domain_error);
    CHECK(Cylinder().supremum_point() == DigitStream::e_rational({}));
}
