// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cofinal/creal.hpp"
#include "cofinal/sampler.hpp"
#include "cofinal/topology.hpp"

namespace cofinal {

/*
 * A directed index set, given operationally: a decidable preorder and a
 * join producing an upper bound of both arguments. Nothing here assumes
 * antisymmetry; several useful instances (partitions under the mesh
 * preorder) have genuine ties.
 */
template <typename Index>
struct Directed {
    std::function<bool(const Index&, const Index&)> leq;
    std::function<Index(const Index&, const Index&)> join;
};

/// Sequence z(0), z(1), ... that eventually dominates every index:
/// leq(alpha, z(n)) for all n >= witness(alpha).
template <typename Index>
struct Cofinal {
    std::function<Index(std::size_t)> at;
    std::function<std::size_t(const Index&)> witness;
    bool monotone = true;  // leq(z(n), z(n+1)) promised by the supplier
};

/// Point assignment over the index set.
template <typename Index>
struct Net {
    std::function<CReal(const Index&)> eval;
};

/*
 * Separability data for a net: for each index alpha, a dominating index
 * beta(alpha) and an enumeration of a generated set F_alpha of indices
 * dominating alpha whose net values are dense among the values at
 * indices >= beta(alpha). density_precision returns an enumeration rank
 * k with |net(enumerate(alpha, k)) - net(beta')| <= eps.
 */
template <typename Index>
struct SeparabilityWitness {
    std::function<Index(const Index&)> beta;
    std::function<Index(const Index&, const Nat&)> enumerate;
    std::function<Nat(const Index&, const Index&, const Rational&)> density_precision;
};

template <typename Index>
struct CofinalProbe {
    Index probe;
    bool pass = false;
    std::optional<std::size_t> fail_n;  // first n in the checked window with !leq(probe, z(n))
};

template <typename Index>
struct CofinalReport {
    std::vector<CofinalProbe<Index>> probes;
    bool all_pass = true;
};

/// Checks the cofinality witness on each probe over the index window
/// witness(probe) .. witness(probe)+budget.
template <typename Index>
CofinalReport<Index> check_cofinal(const Directed<Index>& d, const Cofinal<Index>& c,
                                   const std::vector<Index>& probes, std::size_t budget = 16) {
    CofinalReport<Index> report;
    for (const Index& alpha : probes) {
        CofinalProbe<Index> row{alpha, true, std::nullopt};
        std::size_t start = c.witness(alpha);
        for (std::size_t n = start; n <= start + budget; ++n) {
            if (!d.leq(alpha, c.at(n))) {
                row.pass = false;
                row.fail_n = n;
                break;
            }
        }
        report.all_pass = report.all_pass && row.pass;
        report.probes.push_back(std::move(row));
    }
    return report;
}

/// True iff leq(z(n), x(n)) for every n < up_to: x runs at least as deep
/// into the directed set as the reference sequence, index by index.
template <typename Index>
bool is_regular_prefix(const Directed<Index>& d, const Cofinal<Index>& z,
                       const std::function<Index(std::size_t)>& x, std::size_t up_to) {
    for (std::size_t n = 0; n < up_to; ++n)
        if (!d.leq(z.at(n), x(n))) return false;
    return true;
}

/// B(n) = join(z(n), beta(z(n))). Dominates z(n) by the join contract.
template <typename Index>
std::function<Index(std::size_t)> build_b(const SeparabilityWitness<Index>& w, const Directed<Index>& d,
                                          const Cofinal<Index>& z) {
    return [w, d, z](std::size_t n) {
        Index zn = z.at(n);
        Index b = w.beta(zn);
        return d.join(zn, b);
    };
}

/*
 * Budgeted search for an enumerated index gamma in F_{z(n)} whose net
 * value certifiably stays away from the pair's inner ball. Absence
 * within the budget is an ordinary outcome: the search realizes a
 * semi-decision procedure whose domain is not decidable, and a budget
 * is the only way to make it a total test subject.
 */
template <typename Index>
std::optional<Index> search_a(const SeparabilityWitness<Index>& w, const Net<Index>& net, std::size_t n,
                              const Cofinal<Index>& z, const RegularPair& inner_pair, std::size_t budget) {
    Index zn = z.at(n);
    for (std::size_t k = 0; k < budget; ++k) {
        Index gamma = w.enumerate(zn, Nat(static_cast<unsigned long>(k)));
        if (!classify(inner_pair, net.eval(gamma)).in_outer()) return gamma;
    }
    return std::nullopt;
}

/// Budgeted evaluation of a partial map on naturals: either a value or
/// "no value within budget".
using PartialNat = std::function<std::optional<std::size_t>(std::size_t)>;

struct Divergence {
    std::size_t m = 0;
    std::size_t n = 0;
};

template <typename Index>
using CaptureOutcome = std::variant<Index, Divergence>;

/*
 * The capture combinator: K(m, n) = A(n) when S(m) evaluates to exactly
 * n, and the fallback z(n + k) otherwise. When the first branch fires
 * but A has no value at n, the divergence is reported as data rather
 * than raised: the construction is interesting precisely because that
 * case cannot be decided away.
 */
template <typename Index>
std::function<CaptureOutcome<Index>(std::size_t, std::size_t)> capture_combinator(
    const PartialNat& s, const std::function<std::optional<Index>(std::size_t)>& a, const Cofinal<Index>& z,
    std::size_t k) {
    return [s, a, z, k](std::size_t m, std::size_t n) -> CaptureOutcome<Index> {
        std::optional<std::size_t> sv = s(m);
        if (sv && *sv == n) {
            std::optional<Index> av = a(n);
            if (av) return *av;
            return Divergence{m, n};
        }
        return z.at(n + k);
    };
}

/*
 * The limit extractor: approx(p) queries the net along the reference
 * sequence at depth seq_modulus(2^-(p+1)) and asks that point for p+1
 * correct bits. With an honest modulus both error terms are at most
 * 2^-(p+1), so the result satisfies the 2^-p regularity bound.
 */
template <typename Index>
CReal net_limit(const Directed<Index>& d, const Cofinal<Index>& z, const Net<Index>& net,
                const std::function<std::size_t(const Rational&)>& seq_modulus) {
    (void)d;
    return CReal::from_fn([z, net, seq_modulus](int p) {
        std::size_t n = seq_modulus(pow2(-(static_cast<long>(p) + 1)));
        return net.eval(z.at(n)).approx(p + 1);
    });
}

template <typename Index>
struct Falsification {
    Rational radius;
    std::size_t n = 0;
    Index beta;
    std::string note;
};

template <typename Index>
struct VerifyRadiusRun {
    Rational radius;
    std::size_t offset_k = 0;     // depth from which sampling starts
    std::size_t trials = 0;
    std::size_t falsified = 0;
    bool search_a_witness = false;  // diagnostic: did the budgeted search find an escapee?
};

template <typename Index>
struct VerifyNetReport {
    std::vector<VerifyRadiusRun<Index>> runs;
    std::vector<Falsification<Index>> falsifications;
    bool ok = true;
};

/*
 * Falsification search for "zeta is the limit of the net". For each
 * radius r it builds the three-pair chain U > V1 > V2 > V3 by repeated
 * halving, fixes the depth k past which the reference sequence's values
 * certifiably sit inside V3 (one extra halving of the V3 radius buys
 * the strictness margin), and then samples indices beta >= B(n) for
 * n >= k three ways: tail joins along z, enumerated F-set elements, and
 * joins of both. Every sampled net value must classify inside the
 * outermost pair; any escape is reported with its exact location. The
 * budgeted search_a over <V1, V2> runs once per radius as a diagnostic.
 *
 * This is a sampled refutation procedure, not a proof: it can only ever
 * return "no counterexample found at these seeds and budgets".
 */
template <typename Index>
VerifyNetReport<Index> verify_net_limit(const Directed<Index>& d, const Cofinal<Index>& z, const Net<Index>& net,
                                        const SeparabilityWitness<Index>& w, const CReal& zeta,
                                        const std::vector<Rational>& radii,
                                        const std::function<std::size_t(const Rational&)>& seq_modulus,
                                        std::uint64_t seed, std::size_t trials) {
    VerifyNetReport<Index> report;
    auto b = build_b(w, d, z);
    for (const Rational& r : radii) {
        if (r.sign() <= 0) throw std::invalid_argument("verify_net_limit: radius must be positive");
        RegularPair u_v1 = shrink_to_regular(Ball(zeta, r));
        RegularPair v1_v2 = shrink_to_regular(u_v1.inner());
        RegularPair v2_v3 = shrink_to_regular(v1_v2.inner());
        std::size_t k = seq_modulus(v2_v3.inner_radius() / Rational(2));
        SeededRng rng(seed ^ (0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(k)));
        VerifyRadiusRun<Index> run{r, k, trials, 0, false};
        for (std::size_t t = 0; t < trials; ++t) {
            std::size_t n = k + static_cast<std::size_t>(rng.below(2));
            Index base = b(n);
            Index beta = base;
            std::string note;
            switch (rng.below(3)) {
                case 0: {
                    std::size_t tail = n + 1 + static_cast<std::size_t>(rng.below(2));
                    beta = d.join(base, z.at(tail));
                    note = "tail-join depth " + std::to_string(tail);
                    break;
                }
                case 1: {
                    Nat kk(static_cast<unsigned long>(rng.below(24)));
                    beta = d.join(base, w.enumerate(z.at(n), kk));
                    note = "enumerated rank " + kk.get_str();
                    break;
                }
                default: {
                    std::size_t tail = n + static_cast<std::size_t>(rng.below(2));
                    Nat kk(static_cast<unsigned long>(rng.below(24)));
                    beta = d.join(d.join(base, z.at(tail)), w.enumerate(z.at(n), kk));
                    note = "mixed join tail " + std::to_string(tail) + " rank " + kk.get_str();
                    break;
                }
            }
            if (!classify(u_v1, net.eval(beta)).in_outer()) {
                run.falsified += 1;
                report.falsifications.push_back(Falsification<Index>{r, n, beta, note});
            }
        }
        run.search_a_witness = search_a(w, net, k, z, v1_v2, 9).has_value();
        report.ok = report.ok && run.falsified == 0;
        report.runs.push_back(std::move(run));
    }
    return report;
}

struct EquivalenceReport {
    bool net_converges = false;      // eventual constancy on the top cluster
    bool sequences_agree = false;    // every sampled cofinal sequence settles on one value
    bool consistent = false;         // the two verdicts coincide
    std::size_t sequences = 0;
    std::string detail;
};

/*
 * Desk-scale probe of the classical fact that net convergence is
 * equivalent to convergence of all cofinal sequences. Only meaningful
 * for a finite directed set, where the net converges exactly when eval
 * is constant (to the stated precision) on the top cluster, the set of
 * indices dominating every other. Cofinal sequences are sampled as join
 * walks finished by a full sweep, so cofinality holds by construction.
 */
template <typename Index>
EquivalenceReport classical_equivalence_probe(const Directed<Index>& d, const std::vector<Index>& indices,
                                              const Net<Index>& net, std::size_t trials, std::uint64_t seed,
                                              int precision = 48) {
    if (indices.empty()) throw std::invalid_argument("classical_equivalence_probe: empty index set");
    Rational tol = pow2(-(precision - 2));
    auto close_to = [&](const Rational& a, const Rational& b) { return abs(a - b) <= tol; };
    // Top cluster: indices dominating every index.
    std::vector<Index> top;
    for (const Index& a : indices) {
        bool dominates_all = true;
        for (const Index& o : indices)
            if (!d.leq(o, a)) { dominates_all = false; break; }
        if (dominates_all) top.push_back(a);
    }
    if (top.empty()) {
        // Directedness guarantees a dominating join of everything; if it
        // is not among the listed indices the model is not join-closed.
        throw std::invalid_argument("classical_equivalence_probe: index list is not join-closed");
    }
    EquivalenceReport report;
    Rational anchor = net.eval(top.front()).approx(precision);
    report.net_converges = true;
    for (const Index& a : top)
        if (!close_to(net.eval(a).approx(precision), anchor)) { report.net_converges = false; break; }

    SeededRng rng(seed);
    report.sequences = trials;
    report.sequences_agree = true;
    std::optional<Rational> agreed;
    for (std::size_t t = 0; t < trials && report.sequences_agree; ++t) {
        // Random join walk, then a sweep over every index in a seeded
        // order: after the sweep the walk dominates the whole set.
        Index cur = indices[static_cast<std::size_t>(rng.below(indices.size()))];
        std::size_t walk = 1 + static_cast<std::size_t>(rng.below(2 * indices.size()));
        for (std::size_t i = 0; i < walk; ++i)
            cur = d.join(cur, indices[static_cast<std::size_t>(rng.below(indices.size()))]);
        std::vector<std::size_t> order(indices.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        rng.shuffle(order);
        for (std::size_t i : order) cur = d.join(cur, indices[i]);
        // After the sweep the walk dominates every index, so from here
        // on it can only move within the top cluster; these are the
        // sequence's true tail values, and it converges iff they settle.
        std::vector<Rational> tail_values{net.eval(cur).approx(precision)};
        std::size_t extra = 4 + static_cast<std::size_t>(rng.below(4));
        for (std::size_t i = 0; i < extra; ++i) {
            cur = d.join(cur, indices[static_cast<std::size_t>(rng.below(indices.size()))]);
            tail_values.push_back(net.eval(cur).approx(precision));
        }
        Rational settled = tail_values.back();
        for (const Rational& v : tail_values)
            if (!close_to(v, settled)) { report.sequences_agree = false; break; }
        if (!report.sequences_agree) break;
        if (agreed && !close_to(*agreed, settled)) { report.sequences_agree = false; break; }
        if (!agreed) agreed = settled;
    }
    report.consistent = report.net_converges == report.sequences_agree;
    report.detail = std::string("net ") + (report.net_converges ? "constant" : "splits") + " on top cluster of " +
                    std::to_string(top.size()) + "; sampled sequences " +
                    (report.sequences_agree ? "agree" : "disagree");
    return report;
}

}  // namespace cofinal
