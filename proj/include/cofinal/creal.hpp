// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "cofinal/rational.hpp"

namespace cofinal {

/*
 * A real is an approximation procedure: approx(n) is a rational within
 * 2^-n of the represented value, for every integer n. Every combinator
 * below preserves that bound; the precision shifts are the whole proof,
 * so they are spelled out at each site.
 *
 * Values are immutable. Approximations are memoized per node under a
 * node-local mutex; the underlying function is pure, so a race at worst
 * recomputes the same rational.
 */
class CReal {
public:
    CReal() : CReal(from_rational(Rational(0))) {}

    static CReal from_rational(const Rational& q);
    static CReal from_fn(std::function<Rational(int)> fn);

    /// |value - approx(n)| <= 2^-n.
    Rational approx(int n) const;

    friend CReal operator+(const CReal& a, const CReal& b);
    friend CReal operator-(const CReal& a, const CReal& b);
    friend CReal operator*(const CReal& a, const CReal& b);
    CReal operator-() const;
    friend CReal abs(const CReal& a);
    friend CReal min(const CReal& a, const CReal& b);
    friend CReal max(const CReal& a, const CReal& b);

private:
    struct Node {
        std::function<Rational(int)> fn;
        mutable std::mutex mu;
        mutable std::map<int, Rational> memo;
    };
    explicit CReal(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Verdict of the total comparison: which strict inequality got certified.
/// below_upper certifies value < bound; above_lower certifies value > bound.
struct Branch {
    enum class Kind { below_upper, above_lower };
    Kind kind;
    Rational bound;
};

/*
 * Total comparison against a rational window a < b: decides x < b or
 * x > a (both may be true; exactly one is reported). Probes x once, at
 * the smallest natural n with 2^(1-n) < b - a, and branches on the
 * midpoint; ties go to below_upper. Soundness: if approx(n) <= (a+b)/2
 * then x <= (a+b)/2 + 2^-n < (a+b)/2 + (b-a)/2 = b, symmetrically for
 * the other branch. Deterministic by construction.
 */
Branch compare_within(const CReal& x, const Rational& a, const Rational& b);

/// The probe precision used by compare_within for the window (a, b):
/// smallest natural n with 2^(1-n) < b - a. Exposed for audits.
long comparison_precision(const Rational& a, const Rational& b);

}  // namespace cofinal
