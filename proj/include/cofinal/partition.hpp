// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cofinal/directed.hpp"
#include "cofinal/rational.hpp"
#include "cofinal/sampler.hpp"

namespace cofinal {

/*
 * Tagged partition of [0,1]: division points 0 = t_0 < t_1 < ... < t_K = 1
 * and a tag t_{i-1} <= xi_i <= t_i in every cell. Cuts and tags are
 * rationals; that keeps the index set of the Riemann net enumerable.
 *
 * Two storage layouts behind one immutable value type:
 *  - dyadic: all coordinates share one denominator 2^lg and are stored
 *    as int64 numerators. Partitions with millions of cells are routine
 *    (a depth-n reference partition has 2^(n+1) of them), and the
 *    rational layout would be two orders of magnitude too slow for the
 *    deep-mesh checks.
 *  - general: plain rational vectors, for arbitrary cuts.
 * The mesh is computed once at construction; copies share storage.
 */
class TaggedPartition {
public:
    struct Dyadic {
        int lg = 0;                       // shared denominator 2^lg, 1 <= lg <= 62
        std::vector<std::int64_t> cuts;   // strictly increasing, front 0, back 2^lg
        std::vector<std::int64_t> tags;   // tags[i] in [cuts[i], cuts[i+1]]
    };
    struct General {
        std::vector<Rational> cuts;
        std::vector<Rational> tags;
    };

    TaggedPartition(std::vector<Rational> cuts, std::vector<Rational> tags);
    static TaggedPartition dyadic(int lg, std::vector<std::int64_t> cuts, std::vector<std::int64_t> tags);

    std::size_t cells() const;
    Rational cut(std::size_t i) const;   // 0 <= i <= cells()
    Rational tag(std::size_t i) const;   // 0 <= i < cells()
    const Rational& mesh_value() const;

    /// Non-null when stored in the shared-denominator layout.
    const Dyadic* dyadic_rep() const;
    const General* general_rep() const;

    /// Structural equality (same coordinates as rationals).
    friend bool operator==(const TaggedPartition& a, const TaggedPartition& b);

    std::string describe() const;  // "cells=K mesh=p/q", deterministic

private:
    struct Data;
    explicit TaggedPartition(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    std::shared_ptr<const Data> data_;
};

/// Largest cell width, exact.
const Rational& mesh(const TaggedPartition& w);

/// Mesh preorder: W <= W' iff mesh(W') <= mesh(W). Finer-or-equal mesh
/// means further along the directed set.
bool partition_leq(const TaggedPartition& w, const TaggedPartition& w2);

/// Upper bound under the mesh preorder: whichever argument has the
/// finer mesh (ties pick the second). No cut merging is needed; the
/// order only inspects the mesh.
TaggedPartition partition_join(const TaggedPartition& a, const TaggedPartition& b);

/// Reference sequence: uniform 2^(n+1) cells, midpoint tags, so the
/// mesh is 2^-(n+1), strictly below 2^-n. Nondecreasing and cofinal
/// under the mesh preorder.
TaggedPartition dyadic_cofinal(std::size_t n);

/// Cofinality witness: least n with 2^-(n+1) <= mesh(alpha).
std::size_t dyadic_witness(const TaggedPartition& alpha);

Directed<TaggedPartition> partition_directed();
Cofinal<TaggedPartition> dyadic_cofinal_sequence();

/*
 * Numbering of partitions, the backbone of the enumerable generated
 * sets: every partition has a code, decode(encode(W)) == W, and decoding
 * is total (garbage in, nullopt out). The code is a self-delimiting bit
 * stream (Elias gamma lengths) packed into a natural, so code size grows
 * linearly with the coordinate data rather than exponentially with the
 * cell count.
 */
Nat encode_partition(const TaggedPartition& w);
std::optional<TaggedPartition> decode_partition(const Nat& code);

/// Random partition with mesh <= 2^-(n+1) (hence strictly below 2^-n):
/// uniform or jittered dyadic cuts, uniformly random in-cell tags.
TaggedPartition random_dominating_partition(SeededRng& rng, std::size_t n);

/// Random partition with mesh strictly below `bound`.
TaggedPartition random_partition_mesh_below(SeededRng& rng, const Rational& bound);

/// Small random partition with non-dyadic coordinates (odd denominators)
/// and mesh <= 1/2; exercises the general layout.
TaggedPartition random_general_partition(SeededRng& rng);

}  // namespace cofinal
