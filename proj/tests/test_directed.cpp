// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "cofinal/directed.hpp"

using namespace cofinal;

namespace {

Directed<long> naturals() {
    return {[](const long& a, const long& b) { return a <= b; },
            [](const long& a, const long& b) { return std::max(a, b); }};
}

Cofinal<long> identity_seq() {
    return {[](std::size_t n) { return static_cast<long>(n); },
            [](const long& a) { return a >= 0 ? static_cast<std::size_t>(a) : std::size_t(0); }, true};
}

}  // namespace

TEST_CASE("check_cofinal confirms honest witnesses and locates failures") {
    Directed<long> d = naturals();
    CHECK(check_cofinal(d, identity_seq(), {0L, 5L, 17L}, 8).all_pass);

    Cofinal<long> doubled{[](std::size_t n) { return static_cast<long>(2 * n); },
                          [](const long& a) { return static_cast<std::size_t>(a); }, true};
    CHECK(check_cofinal(d, doubled, {7L, 12L}, 8).all_pass);

    Cofinal<long> stuck{[](std::size_t) { return 0L; }, [](const long&) { return std::size_t(0); }, true};
    CofinalReport<long> bad = check_cofinal(d, stuck, {1L}, 8);
    CHECK_FALSE(bad.all_pass);
    REQUIRE(bad.probes.size() == 1);
    CHECK_FALSE(bad.probes[0].pass);
    CHECK(bad.probes[0].fail_n == std::size_t(0));

    // An undersized witness fails exactly at the claimed start.
    Cofinal<long> lagging{[](std::size_t n) { return static_cast<long>(n); },
                          [](const long& a) { return static_cast<std::size_t>(a / 2); }, true};
    CofinalReport<long> lag = check_cofinal(d, lagging, {10L}, 8);
    CHECK_FALSE(lag.all_pass);
    CHECK(lag.probes[0].fail_n == std::size_t(5));
}

TEST_CASE("is_regular_prefix compares index by index") {
    Directed<long> d = naturals();
    Cofinal<long> z = identity_seq();
    CHECK(is_regular_prefix<long>(d, z, [](std::size_t n) { return static_cast<long>(n + 3); }, 40));
    CHECK(is_regular_prefix<long>(d, z, [](std::size_t n) { return static_cast<long>(n); }, 40));
    CHECK_FALSE(is_regular_prefix<long>(
        d, z, [](std::size_t n) { return n == 7 ? 0L : static_cast<long>(n + 1); }, 40));
}

TEST_CASE("build_b dominates the reference sequence by the join contract") {
    Directed<long> d = naturals();
    Cofinal<long> z = identity_seq();
    SeparabilityWitness<long> w;
    w.beta = [](const long& a) { return a + 5; };
    w.enumerate = [](const long& a, const Nat& k) { return a + static_cast<long>(k.get_ui() % 7); };
    w.density_precision = [](const long&, const long&, const Rational&) { return Nat(0); };
    auto b = build_b(w, d, z);
    for (std::size_t n = 0; n < 20; ++n) {
        CHECK(d.leq(z.at(n), b(n)));
        CHECK(b(n) == static_cast<long>(n) + 5);
    }
}

TEST_CASE("search_a is a budgeted semi-decision") {
    Directed<long> d = naturals();
    Cofinal<long> z = identity_seq();
    SeparabilityWitness<long> w;
    w.beta = [](const long& a) { return a; };
    w.enumerate = [](const long& a, const Nat& k) { return a + static_cast<long>(k.get_ui()); };
    w.density_precision = [](const long&, const long&, const Rational&) { return Nat(0); };
    RegularPair pair = shrink_to_regular(Ball(CReal::from_rational(Rational(0)), Rational(1)));
    // Net value n/16: indices 0..15 classify inside, 16+ certifiably escape.
    Net<long> net{[](const long& n) { return CReal::from_rational(Rational(n, 16)); }};
    CHECK_FALSE(search_a(w, net, 0, z, pair, 9).has_value());  // reaches only values 0..8/16
    std::optional<long> hit = search_a(w, net, 10, z, pair, 9);
    REQUIRE(hit.has_value());
    CHECK(*hit == 13);  // first index whose value 13/16 clears the midpoint 3/4
}

TEST_CASE("capture_combinator selects capture, fallback, and divergence") {
    Cofinal<long> z = identity_seq();
    PartialNat s = [](std::size_t m) -> std::optional<std::size_t> {
        if (m % 2 == 1) return std::nullopt;  // odd arguments never halt
        return m / 2;
    };
    auto a = [](std::size_t n) -> std::optional<long> {
        if (n >= 90) return std::nullopt;  // A runs out high up
        return static_cast<long>(1000 + n);
    };
    auto k = capture_combinator<long>(s, a, z, 3);

    CaptureOutcome<long> captured = k(8, 4);  // S(8) = 4 hits n = 4
    REQUIRE(std::holds_alternative<long>(captured));
    CHECK(std::get<long>(captured) == 1004);

    CaptureOutcome<long> fallback = k(8, 5);  // S(8) = 4 != 5
    REQUIRE(std::holds_alternative<long>(fallback));
    CHECK(std::get<long>(fallback) == 8);  // z(5 + 3)

    CaptureOutcome<long> off = k(9, 4);  // S(9) undefined within budget
    REQUIRE(std::holds_alternative<long>(off));
    CHECK(std::get<long>(off) == 7);

    CaptureOutcome<long> diverged = k(200, 100);  // S(200) = 100, A(100) undefined
    REQUIRE(std::holds_alternative<Divergence>(diverged));
    CHECK(std::get<Divergence>(diverged).m == 200);
    CHECK(std::get<Divergence>(diverged).n == 100);
}

TEST_CASE("net_limit is pinned on toy nets over the naturals") {
    Directed<long> d = naturals();
    Cofinal<long> z = identity_seq();
    auto modulus = [](const Rational& eps) { return static_cast<std::size_t>(prec_for(eps)); };

    Net<long> decaying{[](const long& n) { return CReal::from_rational(pow2(-n)); }};
    CReal lim = net_limit(d, z, decaying, modulus);
    // approx(p) probes depth prec_for(2^-(p+1)) = p+1, value 2^-(p+1).
    CHECK(lim.approx(5) == Rational(1, 64));
    CHECK(lim.approx(0) == Rational(1, 2));
    for (int m = 0; m <= 20; m += 4)
        for (int n = 2; n <= 20; n += 5)
            CHECK(abs(lim.approx(m) - lim.approx(n)) <= pow2(-m) + pow2(-n));

    Net<long> rising{[](const long& n) { return CReal::from_rational(Rational(1) - pow2(-n)); }};
    CHECK(net_limit(d, z, rising, modulus).approx(5) == Rational(63, 64));

    Net<long> flat{[](const long&) { return CReal::from_rational(Rational(0)); }};
    CHECK(net_limit(d, z, flat, modulus).approx(5) == Rational(0));
}

TEST_CASE("verify_net_limit accepts the true limit and falsifies a wrong one") {
    Directed<long> d = naturals();
    Cofinal<long> z = identity_seq();
    SeparabilityWitness<long> w;
    w.beta = [](const long& a) { return a; };
    w.enumerate = [](const long& a, const Nat& k) { return a + static_cast<long>(k.get_ui()); };
    w.density_precision = [](const long&, const long&, const Rational&) { return Nat(0); };
    Net<long> decaying{[](const long& n) { return CReal::from_rational(pow2(-n)); }};
    auto modulus = [](const Rational& eps) { return static_cast<std::size_t>(prec_for(eps)); };

    VerifyNetReport<long> good = verify_net_limit<long>(d, z, decaying, w, CReal::from_rational(Rational(0)),
                                                        {Rational(1, 4), Rational(1, 16)}, modulus, 11, 40);
    CHECK(good.ok);
    CHECK(good.falsifications.empty());
    REQUIRE(good.runs.size() == 2);
    CHECK(good.runs[0].trials == 40);

    VerifyNetReport<long> bad = verify_net_limit<long>(d, z, decaying, w, CReal::from_rational(Rational(1)),
                                                       {Rational(1, 4)}, modulus, 11, 40);
    CHECK_FALSE(bad.ok);
    CHECK(bad.falsifications.size() == 40);  // every sampled value sits near 0, far from 1
    CHECK(bad.runs[0].search_a_witness);
    CHECK_THROWS_AS(verify_net_limit<long>(d, z, decaying, w, CReal::from_rational(Rational(0)),
                                           {Rational(0)}, modulus, 11, 1),
                    std::invalid_argument);
}

TEST_CASE("classical equivalence probe agrees on a divisor lattice") {
    Directed<long> dd{[](const long& a, const long& b) { return b % a == 0; },
                      [](const long& a, const long& b) { return a / std::gcd(a, b) * b; }};
    std::vector<long> divs;
    for (long v = 1; v <= 60; ++v)
        if (60 % v == 0) divs.push_back(v);
    Net<long> net{[](const long& v) { return CReal::from_rational(Rational(v % 7, 9)); }};
    EquivalenceReport rep = classical_equivalence_probe(dd, divs, net, 5, 3);
    CHECK(rep.net_converges);
    CHECK(rep.sequences_agree);
    CHECK(rep.consistent);
}

TEST_CASE("classical equivalence probe reports a splitting net") {
    using RC = std::pair<long, long>;
    Directed<RC> dc{[](const RC& a, const RC& b) { return a.first <= b.first; },
                    [](const RC& a, const RC& b) {
                        return RC{std::max(a.first, b.first), a.first == b.first
                                                                  ? (a.second ^ b.second)
                                                                  : (a.first > b.first ? a.second : b.second)};
                    }};
    std::vector<RC> idx = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    Net<RC> net{[](const RC& v) { return CReal::from_rational(Rational(v.second)); }};
    EquivalenceReport rep = classical_equivalence_probe(dc, idx, net, 10, 3);
    CHECK_FALSE(rep.net_converges);
    CHECK_FALSE(rep.sequences_agree);
    CHECK(rep.consistent);

    // A model missing its joins is rejected rather than misreported:
    // {2, 3} under divisibility has no listed upper bound (lcm is 6).
    Directed<long> dd{[](const long& a, const long& b) { return b % a == 0; },
                      [](const long& a, const long& b) { return a / std::gcd(a, b) * b; }};
    Net<long> flat{[](const long&) { return CReal::from_rational(Rational(0)); }};
    CHECK_THROWS_AS(classical_equivalence_probe(dd, std::vector<long>{2, 3}, flat, 3, 3),
                    std::invalid_argument);
}
