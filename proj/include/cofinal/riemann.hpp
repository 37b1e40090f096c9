// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "cofinal/directed.hpp"
#include "cofinal/integrand.hpp"
#include "cofinal/partition.hpp"

namespace cofinal {

/// Raised when a requested precision exceeds the configured ceiling.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Highest precision integrate() accepts. Defaults to 22; override with
/// the COFINAL_PRECISION_CEILING environment variable.
long precision_ceiling();
inline constexpr const char* kCeilingEnvVar = "COFINAL_PRECISION_CEILING";

/*
 * S(f, W) = sum of f(tag_i) * (t_i - t_{i-1}) as a CReal. With an exact
 * evaluator the sum is a single rational, computed once on demand;
 * otherwise approx(n) queries every tag at n+1, which is enough because
 * the cell widths sum to 1.
 */
CReal riemann_sum(const Integrand& f, const TaggedPartition& w);

/// Least n such that the depth-n reference partition is fine enough for
/// an eps-accurate sum: 2^-(n+1) <= omega(eps). This is the convergence
/// modulus of n |-> S(f, dyadic_cofinal(n)).
std::size_t riemann_seq_modulus(const Integrand& f, const Rational& eps);

/// Largest dyadic bound 2^-j certified for |S(f,W) - integral| by the
/// continuity estimate, given mesh(W) <= m; Rational(1) when even the
/// coarsest step is not covered.
Rational eps_for_mesh(const Integrand& f, const Rational& m);

/*
 * Separability data for the Riemann net. The generated set F_alpha is
 * every partition with mesh <= mesh(alpha): all coordinates are already
 * rational, so the whole dominating cone is enumerable through the
 * partition codes, with synthetic uniform partitions filling the ranks
 * that are not valid codes. Density is therefore exact: beta' is itself
 * enumerated, at rank encode_partition(beta'), and density_precision
 * returns that rank (distance zero, within every eps).
 */
SeparabilityWitness<TaggedPartition> riemann_separability(const Integrand& f);

/// The Riemann net of f bundled with its directed order, reference
/// sequence, separability witness and convergence modulus. Net values
/// are cached per partition fingerprint, so repeated evaluation at the
/// same index costs one sum.
struct RiemannNet {
    Directed<TaggedPartition> directed;
    Cofinal<TaggedPartition> cofinal;
    Net<TaggedPartition> net;
    SeparabilityWitness<TaggedPartition> witness;
    std::function<std::size_t(const Rational&)> seq_modulus;
};

RiemannNet riemann_net(const Integrand& f);

/// The integral of f over [0,1] as the limit of the Riemann net along
/// the reference sequence. p only gates resources: callers intending to
/// read approx(p) must pass p here, and anything beyond the ceiling is
/// rejected with ResourceError before any work starts.
CReal integrate(const Integrand& f, long p);

struct WeakProbeReport {
    std::size_t trials = 0;
    std::size_t depth = 0;
    bool pairwise_pass = false;     // tail sums pairwise within continuity bounds
    bool consistent_pass = false;   // every sum near the integrator's value
    Rational max_deviation;         // max |S_n - integral| over all n
    Rational max_tail_deviation;    // same, over n >= depth/2
};

/*
 * Samples `trials` random partition sequences W_0..W_depth with
 * mesh(W_n) < 2^-n and checks that their sums behave like a convergent
 * sequence: pairwise |S_m - S_n| <= eps_m + eps_n + tol + slack and
 * |S_n - integral| <= eps_n + tol + slack, where eps_n is the
 * continuity bound for mesh(W_n) and slack covers the two rational
 * approximations. tol = 0 checks the bare theorem bounds.
 */
WeakProbeReport weak_integrability_probe(const Integrand& f, std::uint64_t seed, std::size_t trials,
                                         std::size_t depth, const Rational& tol);

}  // namespace cofinal
