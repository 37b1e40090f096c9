// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "cofinal/creal.hpp"

namespace cofinal {

/// Open ball with constructive center and exact rational radius > 0.
struct Ball {
    CReal center;
    Rational radius;

    Ball(CReal c, Rational r) : center(std::move(c)), radius(std::move(r)) {
        if (radius.sign() <= 0) throw std::invalid_argument("Ball: radius must be positive");
    }
};

/*
 * Concentric ball pair with strictly smaller inner radius. The gap
 * between the radii is the decision window that makes membership
 * questions total: a point is either inside the outer ball or outside
 * the inner one, and the gap absorbs the approximation error.
 */
class RegularPair {
public:
    RegularPair(const Ball& outer, const Rational& inner_radius)
        : center_(outer.center), outer_r_(outer.radius), inner_r_(inner_radius) {
        if (inner_r_.sign() <= 0) throw std::invalid_argument("RegularPair: inner radius must be positive");
        if (!(inner_r_ < outer_r_)) throw std::invalid_argument("RegularPair: inner radius must be smaller");
    }

    const CReal& center() const { return center_; }
    const Rational& outer_radius() const { return outer_r_; }
    const Rational& inner_radius() const { return inner_r_; }
    Ball outer() const { return Ball(center_, outer_r_); }
    Ball inner() const { return Ball(center_, inner_r_); }

private:
    CReal center_;
    Rational outer_r_;
    Rational inner_r_;
};

/// Canonical regularization of a single ball: keep it as the outer
/// neighborhood and take half its radius for the inner one.
RegularPair shrink_to_regular(const Ball& u);

/// Total membership verdict for a point against a regular pair.
/// in_outer certifies d(x, center) < outer radius; not_touch_inner
/// certifies d(x, center) > inner radius. `witness` carries the first
/// failing index when the verdict comes from scanning a sequence.
struct Classification {
    enum class Kind { in_outer, not_touch_inner };
    Kind kind;
    std::optional<std::size_t> witness;

    bool in_outer() const { return kind == Kind::in_outer; }
};

/// Decides membership by comparing d = |x - center| inside the radius
/// window. Total for every x; never inspects x beyond one probe of d.
Classification classify(const RegularPair& pair, const CReal& x);

/// Raised when a certified verdict is contradicted by later evidence.
struct ContractViolation : std::runtime_error {
    explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

/*
 * Decision procedure for eventual membership of a convergent sequence.
 *
 * Preconditions: d(seq(n), limit) < eps for all n >= modulus(eps), and
 * the pair is centered at the limit. Then every term beyond
 * N = modulus(inner_radius/2) lies inside the inner ball outright, so
 * the finite prefix 0..N decides the disjunction: if every prefix
 * element classifies in_outer, the whole sequence is inside the outer
 * ball; otherwise the first failing index is a certified witness that
 * the sequence leaves the inner ball. Centering is sanity-checked by
 * classifying the limit itself; an off-center limit that fails the
 * check is rejected up front.
 *
 * audit_budget > 0 additionally classifies indices N+1..N+audit_budget
 * and throws ContractViolation if any of them contradicts an in_outer
 * verdict; with honest preconditions this cannot fire.
 */
Classification decide_convergent(const std::function<CReal(std::size_t)>& seq,
                                 const std::function<std::size_t(const Rational&)>& modulus,
                                 const CReal& limit,
                                 const RegularPair& pair,
                                 std::size_t audit_budget = 0);

}  // namespace cofinal
