// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cofinal/creal.hpp"

namespace cofinal {

/*
 * A function on [0,1] packaged with its uniform continuity modulus:
 * |x - y| <= omega(eps) implies |f(x) - f(y)| <= eps. The modulus is a
 * required input, not something inferred: it is what makes the mesh
 * bound of a partition translate into an error bound on its sum.
 *
 * exact_eval is optional. When present it must agree with eval on
 * rationals, and the Riemann machinery uses it to keep sums in exact
 * arithmetic; without it every tag evaluation goes through CReal
 * approximation.
 */
struct Integrand {
    std::string id;
    std::function<CReal(const CReal&)> eval;
    std::function<Rational(const Rational&)> omega;
    std::function<Rational(const Rational&)> exact_eval;  // may be empty
};

/*
 * Builds the CReal evaluator from an exact rational one by continuity:
 * to get f(x) to within 2^-n, probe x at precision m with
 * 2^-m <= omega(2^-n), clamp the probe into [0,1], and evaluate
 * exactly there. Clamping never grows the distance to x when x itself
 * lies in [0,1].
 */
Integrand lift_integrand(std::string id, std::function<Rational(const Rational&)> exact,
                         std::function<Rational(const Rational&)> omega);

/// Registry entry: the integrand plus its exact integral over [0,1],
/// known through the antiderivative.
struct RegistryEntry {
    Integrand f;
    Rational integral;
};

/// Shipped functions: const1 = 1, linear = x, square = x^2,
/// absdev = |x - 1/2|, with moduli 1, eps, eps/2, eps.
const std::vector<RegistryEntry>& integrand_registry();

std::optional<RegistryEntry> find_integrand(const std::string& id);

}  // namespace cofinal
