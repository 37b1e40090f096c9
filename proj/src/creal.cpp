// SPDX-License-Identifier: Apache-2.0

#include "cofinal/creal.hpp"

#include <stdexcept>
#include <utility>

namespace cofinal {

CReal CReal::from_rational(const Rational& q) {
    auto node = std::make_shared<Node>();
    node->fn = [q](int) { return q; };
    return CReal(std::move(node));
}

CReal CReal::from_fn(std::function<Rational(int)> fn) {
    if (!fn) throw std::invalid_argument("CReal::from_fn: empty function");
    auto node = std::make_shared<Node>();
    node->fn = std::move(fn);
    return CReal(std::move(node));
}

Rational CReal::approx(int n) const {
    {
        std::lock_guard<std::mutex> lk(node_->mu);
        auto it = node_->memo.find(n);
        if (it != node_->memo.end()) return it->second;
    }
    Rational v = node_->fn(n);  // outside the lock: fn may recurse into other nodes
    std::lock_guard<std::mutex> lk(node_->mu);
    return node_->memo.emplace(n, std::move(v)).first->second;
}

namespace {

// Queries at max(n,0)+k keep exponents nonnegative, so crude bounds like
// 2^-m <= 1 stay valid for every requested n.
int base_prec(int n) { return n > 0 ? n : 0; }

}  // namespace

CReal operator+(const CReal& a, const CReal& b) {
    // |(x+y) - (p+q)| <= |x-p| + |y-q| <= 2*2^-(m+1) = 2^-m <= 2^-n.
    return CReal::from_fn([a, b](int n) {
        int m = base_prec(n) + 1;
        return a.approx(m) + b.approx(m);
    });
}

CReal operator-(const CReal& a, const CReal& b) {
    return CReal::from_fn([a, b](int n) {
        int m = base_prec(n) + 1;
        return a.approx(m) - b.approx(m);
    });
}

CReal operator*(const CReal& a, const CReal& b) {
    /*
     * Bounds Ba >= |x|, Bb >= |y| come from the coarsest approximation:
     * |x| <= |approx(0)| + 1. Querying both factors at m = max(n,0)+s
     * with s = ceil_log2(Ba+Bb+1) gives
     *   |xy - pq| <= |x||y-q| + |q||x-p|
     *             <= Ba*2^-m + (Bb + 2^-m)*2^-m
     *             <= (Ba+Bb+1)*2^-m      (2^-m <= 1 since m >= 0)
     *             <= 2^s * 2^-m <= 2^-n.
     */
    return CReal::from_fn([a, b](int n) {
        Rational ba = abs(a.approx(0)) + Rational(1);
        Rational bb = abs(b.approx(0)) + Rational(1);
        long s = ceil_log2(ba + bb + Rational(1));
        int m = base_prec(n) + static_cast<int>(s);
        return a.approx(m) * b.approx(m);
    });
}

CReal CReal::operator-() const {
    CReal a = *this;
    return CReal::from_fn([a](int n) { return -a.approx(n); });
}

CReal abs(const CReal& a) {
    // ||x| - |p|| <= |x - p|.
    return CReal::from_fn([a](int n) { return abs(a.approx(base_prec(n))); });
}

CReal min(const CReal& a, const CReal& b) {
    // |min(x,y) - min(p,q)| <= max(|x-p|, |y-q|).
    return CReal::from_fn([a, b](int n) {
        int m = base_prec(n);
        return min(a.approx(m), b.approx(m));
    });
}

CReal max(const CReal& a, const CReal& b) {
    return CReal::from_fn([a, b](int n) {
        int m = base_prec(n);
        return max(a.approx(m), b.approx(m));
    });
}

long comparison_precision(const Rational& a, const Rational& b) {
    if (!(a < b)) throw std::invalid_argument("comparison_precision: requires a < b");
    // Smallest natural n with 2^(1-n) < b - a.
    Rational gap = b - a;
    long n = 0;
    while (!(pow2(1 - n) < gap)) ++n;
    return n;
}

Branch compare_within(const CReal& x, const Rational& a, const Rational& b) {
    long n = comparison_precision(a, b);
    Rational mid = (a + b) / Rational(2);
    if (x.approx(static_cast<int>(n)) <= mid) return Branch{Branch::Kind::below_upper, b};
    return Branch{Branch::Kind::above_lower, a};
}

}  // namespace cofinal
