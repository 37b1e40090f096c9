// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>
#include <thread>
#include <vector>

#include "cofinal/creal.hpp"

using namespace cofinal;

TEST_CASE("approximations of rationals are exact at every precision") {
    CReal x = CReal::from_rational(Rational(3, 7));
    for (int n : {-5, 0, 1, 30}) CHECK(x.approx(n) == Rational(3, 7));
}

TEST_CASE("arithmetic matches exact rational evaluation within 2^-n") {
    Rational qa(3, 7), qb(-2, 5);
    CReal a = CReal::from_rational(qa);
    CReal b = CReal::from_rational(qb);
    struct Case {
        CReal x;
        Rational q;
    };
    std::vector<Case> cases = {
        {a + b, qa + qb}, {a - b, qa - qb},   {a * b, qa * qb},       {-a, -qa},
        {abs(b), abs(qb)}, {min(a, b), min(qa, qb)}, {max(a, b), max(qa, qb)},
        {(a + b) * (a - b), (qa + qb) * (qa - qb)},
    };
    for (const Case& c : cases)
        for (int n : {-3, 0, 4, 20})
            CHECK(abs(c.x.approx(n) - c.q) <= pow2(-n));
}

TEST_CASE("regularity holds across precisions for composed values") {
    CReal x = (CReal::from_rational(Rational(1, 3)) * CReal::from_rational(Rational(22, 7)) -
               CReal::from_rational(Rational(5, 11))) *
              CReal::from_rational(Rational(-9, 4));
    for (int m = 0; m <= 24; m += 3)
        for (int n = 0; n <= 24; n += 5)
            CHECK(abs(x.approx(m) - x.approx(n)) <= pow2(-m) + pow2(-n));
}

TEST_CASE("a slowly converging approximation function is handled as-is") {
    // approx(n) = 2^-n is a valid name for zero.
    CReal z = CReal::from_fn([](int n) { return pow2(-(n > 0 ? n : 0)); });
    CReal two_z = z + z;
    for (int n : {0, 3, 10}) CHECK(abs(two_z.approx(n)) <= Rational(2) * pow2(-n));
    CHECK_THROWS_AS(CReal::from_fn(nullptr), std::invalid_argument);
}

TEST_CASE("comparison_precision is the least n with 2^(1-n) < gap") {
    CHECK(comparison_precision(Rational(0), Rational(1)) == 2);
    CHECK(comparison_precision(Rational(1, 2), Rational(1)) == 3);
    CHECK(comparison_precision(Rational(0), Rational(4)) == 0);
    CHECK(comparison_precision(Rational(0), Rational(3, 2)) == 1);
    CHECK_THROWS_AS(comparison_precision(Rational(1), Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(comparison_precision(Rational(2), Rational(1)), std::invalid_argument);
}

TEST_CASE("compare_within pins the documented branch on the window (0,1)") {
    Branch b = compare_within(CReal::from_rational(Rational(1, 2)), Rational(0), Rational(1));
    // Probe lands exactly on the midpoint; ties go below.
    CHECK(b.kind == Branch::Kind::below_upper);
    CHECK(b.bound == Rational(1));

    Branch lo = compare_within(CReal::from_rational(Rational(1, 8)), Rational(0), Rational(1));
    CHECK(lo.kind == Branch::Kind::below_upper);
    Branch hi = compare_within(CReal::from_rational(Rational(7, 8)), Rational(0), Rational(1));
    CHECK(hi.kind == Branch::Kind::above_lower);
    CHECK(hi.bound == Rational(0));
}

TEST_CASE("compare_within verdicts are sound for rationals across windows") {
    for (long num = -20; num <= 20; ++num) {
        Rational x(num, 8);
        Branch b = compare_within(CReal::from_rational(x), Rational(-1), Rational(1));
        if (b.kind == Branch::Kind::below_upper)
            CHECK(x < Rational(1));
        else
            CHECK(x > Rational(-1));
        Branch c = compare_within(CReal::from_rational(x), Rational(1, 3), Rational(2, 3));
        if (c.kind == Branch::Kind::below_upper)
            CHECK(x < Rational(2, 3));
        else
            CHECK(x > Rational(1, 3));
    }
}

TEST_CASE("memoized approximations are stable under concurrent access") {
    CReal x = (CReal::from_rational(Rational(1, 3)) + CReal::from_rational(Rational(1, 7))) *
              CReal::from_rational(Rational(9, 2));
    Rational expected = (Rational(1, 3) + Rational(1, 7)) * Rational(9, 2);
    std::vector<std::thread> threads;
    std::vector<Rational> got(8);
    for (int t = 0; t < 8; ++t)
        threads.emplace_back([&, t] { got[static_cast<std::size_t>(t)] = x.approx(24); });
    for (std::thread& th : threads) th.join();
    for (const Rational& g : got) {
        CHECK(g == got[0]);
        CHECK(abs(g - expected) <= pow2(-24));
    }
}
