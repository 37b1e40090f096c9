// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>

#include "cofinal/topology.hpp"

using namespace cofinal;

namespace {

RegularPair unit_pair() {
    // Center 0, outer radius 1, inner radius 1/2.
    return shrink_to_regular(Ball(CReal::from_rational(Rational(0)), Rational(1)));
}

CReal rat(long n, long d = 1) { return CReal::from_rational(Rational(n, d)); }

}  // namespace

TEST_CASE("ball and pair constructors validate radii") {
    CHECK_THROWS_AS(Ball(rat(0), Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(Ball(rat(0), Rational(-1)), std::invalid_argument);
    Ball u(rat(0), Rational(1));
    CHECK_THROWS_AS(RegularPair(u, Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(RegularPair(u, Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(RegularPair(u, Rational(2)), std::invalid_argument);
    RegularPair p(u, Rational(1, 3));
    CHECK(p.outer_radius() == Rational(1));
    CHECK(p.inner_radius() == Rational(1, 3));
    CHECK(shrink_to_regular(u).inner_radius() == Rational(1, 2));
}

TEST_CASE("classify pins the documented verdicts on the unit pair") {
    RegularPair pair = unit_pair();
    CHECK(classify(pair, rat(3, 4)).in_outer());
    CHECK_FALSE(classify(pair, rat(2)).in_outer());
    CHECK(classify(pair, rat(0)).in_outer());
    // Within the window both verdicts would be true; the midpoint rule
    // decides: distance 5/8 lies below (1/2+1)/2 = 3/4, distance 7/8 above.
    CHECK(classify(pair, rat(5, 8)).in_outer());
    CHECK_FALSE(classify(pair, rat(7, 8)).in_outer());
    CHECK_FALSE(classify(pair, rat(-7, 8)).in_outer());
}

TEST_CASE("classify verdicts certify the right strict inequality") {
    RegularPair pair = shrink_to_regular(Ball(rat(1, 3), Rational(1, 4)));
    for (long num = -8; num <= 16; ++num) {
        Rational x(num, 8);
        Classification c = classify(pair, CReal::from_rational(x));
        if (c.in_outer())
            CHECK(abs(x - Rational(1, 3)) < pair.outer_radius());
        else
            CHECK(abs(x - Rational(1, 3)) > pair.inner_radius());
    }
}

TEST_CASE("decide_convergent accepts a constant sequence") {
    RegularPair pair = unit_pair();
    auto seq = [](std::size_t) { return CReal::from_rational(Rational(0)); };
    auto modulus = [](const Rational&) { return std::size_t(0); };
    Classification out = decide_convergent(seq, modulus, rat(0), pair, 4);
    CHECK(out.in_outer());
    CHECK_FALSE(out.witness.has_value());
}

TEST_CASE("decide_convergent reports the first escaping index") {
    RegularPair pair = unit_pair();
    // One early outlier, then settled at the limit; modulus 1 is honest.
    auto seq = [](std::size_t n) { return CReal::from_rational(n == 0 ? Rational(5) : Rational(0)); };
    auto modulus = [](const Rational&) { return std::size_t(1); };
    Classification out = decide_convergent(seq, modulus, rat(0), pair);
    CHECK_FALSE(out.in_outer());
    CHECK(out.witness == std::size_t(0));
}

TEST_CASE("decide_convergent may certify an escape for a convergent sequence") {
    // seq(n) = 2^-n converges to 0, but its head starts on the outer
    // boundary; the disjunction is decided by the escape certificate.
    RegularPair pair = unit_pair();
    auto seq = [](std::size_t n) { return CReal::from_rational(pow2(-static_cast<long>(n))); };
    auto modulus = [](const Rational& eps) { return static_cast<std::size_t>(prec_for(eps)); };
    Classification out = decide_convergent(seq, modulus, rat(0), pair, 4);
    CHECK_FALSE(out.in_outer());
    CHECK(out.witness == std::size_t(0));
    CHECK(pow2(0) > pair.inner_radius());  // the certified inequality, exactly
}

TEST_CASE("decide_convergent rejects an off-center limit") {
    RegularPair pair = unit_pair();
    auto seq = [](std::size_t) { return CReal::from_rational(Rational(2)); };
    auto modulus = [](const Rational&) { return std::size_t(0); };
    CHECK_THROWS_AS(decide_convergent(seq, modulus, rat(2), pair), std::invalid_argument);
}

TEST_CASE("the audit pass exposes a dishonest modulus") {
    RegularPair pair = unit_pair();
    // Claims to settle immediately, but from index 1 on sits at 7/8,
    // which certifiably leaves the inner ball.
    auto seq = [](std::size_t n) { return CReal::from_rational(n == 0 ? Rational(0) : Rational(7, 8)); };
    auto modulus = [](const Rational&) { return std::size_t(0); };
    CHECK_THROWS_AS(decide_convergent(seq, modulus, rat(0), pair, 3), ContractViolation);
    // Without an audit budget the lie goes unobserved.
    CHECK(decide_convergent(seq, modulus, rat(0), pair, 0).in_outer());
}
