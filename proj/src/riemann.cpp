// SPDX-License-Identifier: Apache-2.0

#include "cofinal/riemann.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>

namespace cofinal {

long precision_ceiling() {
    const char* v = std::getenv(kCeilingEnvVar);
    if (!v || !*v) return 22;
    char* end = nullptr;
    long parsed = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || parsed < 0 || parsed > 64) return 22;
    return parsed;
}

namespace {

Rational exact_sum(const Integrand& f, const TaggedPartition& w) {
    const auto* dy = w.dyadic_rep();
    if (dy) {
        long den = std::int64_t(1) << dy->lg;
        // Uniform spacing is the common case and factors the width out.
        bool uniform = true;
        std::int64_t gap = dy->cuts[1] - dy->cuts[0];
        for (std::size_t i = 1; i + 1 < dy->cuts.size() && uniform; ++i)
            uniform = dy->cuts[i + 1] - dy->cuts[i] == gap;
        Rational acc(0);
        if (uniform) {
            for (std::size_t i = 0; i < dy->tags.size(); ++i)
                acc += f.exact_eval(Rational(static_cast<long>(dy->tags[i]), den));
            return acc * Rational(gap, den);
        }
        for (std::size_t i = 0; i < dy->tags.size(); ++i)
            acc += f.exact_eval(Rational(static_cast<long>(dy->tags[i]), den)) *
                   Rational(static_cast<long>(dy->cuts[i + 1] - dy->cuts[i]), den);
        return acc;
    }
    Rational acc(0);
    for (std::size_t i = 0; i < w.cells(); ++i) acc += f.exact_eval(w.tag(i)) * (w.cut(i + 1) - w.cut(i));
    return acc;
}

}  // namespace

CReal riemann_sum(const Integrand& f, const TaggedPartition& w) {
    if (f.exact_eval) {
        // The sum is one exact rational; compute it lazily, once.
        auto slot = std::make_shared<std::pair<std::mutex, std::optional<Rational>>>();
        return CReal::from_fn([f, w, slot](int) {
            std::lock_guard<std::mutex> lk(slot->first);
            if (!slot->second) slot->second = exact_sum(f, w);
            return *slot->second;
        });
    }
    // Tag values at n+1 suffice: the widths are positive and sum to 1,
    // so the weighted approximation errors add up to at most 2^-(n+1).
    return CReal::from_fn([f, w](int n) {
        int m = (n > 0 ? n : 0) + 1;
        Rational acc(0);
        for (std::size_t i = 0; i < w.cells(); ++i)
            acc += f.eval(CReal::from_rational(w.tag(i))).approx(m) * (w.cut(i + 1) - w.cut(i));
        return acc;
    });
}

std::size_t riemann_seq_modulus(const Integrand& f, const Rational& eps) {
    long l = prec_for(f.omega(eps));
    return l >= 1 ? static_cast<std::size_t>(l - 1) : 0;
}

Rational eps_for_mesh(const Integrand& f, const Rational& m) {
    if (m.sign() <= 0) throw std::invalid_argument("eps_for_mesh: mesh must be positive");
    if (f.omega(Rational(1)) < m) return Rational(1);  // continuity gives nothing sharper
    long j = 0;
    while (j < 200 && f.omega(pow2(-(j + 1))) >= m) ++j;
    return pow2(-j);
}

namespace {

struct Fingerprint {
    std::uint64_t h_cuts = 0;
    std::uint64_t h_tags = 0;
    std::size_t cells = 0;
    int lg = -1;
    bool operator<(const Fingerprint& o) const {
        return std::tie(h_cuts, h_tags, cells, lg) < std::tie(o.h_cuts, o.h_tags, o.cells, o.lg);
    }
};

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v;
    return h * 1099511628211ULL;
}

std::uint64_t hash_rational(std::uint64_t h, const Rational& r) {
    for (char c : r.str()) h = mix(h, static_cast<unsigned char>(c));
    return h;
}

Fingerprint fingerprint(const TaggedPartition& w) {
    Fingerprint fp;
    fp.cells = w.cells();
    const std::uint64_t seed = 14695981039346656037ULL;
    if (const auto* dy = w.dyadic_rep()) {
        fp.lg = dy->lg;
        std::uint64_t h = seed;
        for (std::int64_t v : dy->cuts) h = mix(h, static_cast<std::uint64_t>(v));
        fp.h_cuts = h;
        h = seed;
        for (std::int64_t v : dy->tags) h = mix(h, static_cast<std::uint64_t>(v));
        fp.h_tags = h;
        return fp;
    }
    std::uint64_t h = seed;
    for (std::size_t i = 0; i <= w.cells(); ++i) h = hash_rational(h, w.cut(i));
    fp.h_cuts = h;
    h = seed;
    for (std::size_t i = 0; i < w.cells(); ++i) h = hash_rational(h, w.tag(i));
    fp.h_tags = h;
    return fp;
}

TaggedPartition uniform_with_tag_style(std::size_t level, unsigned style) {
    if (level > 24) throw std::length_error("uniform_with_tag_style: depth beyond materializable range");
    int lg = static_cast<int>(level) + 2;
    std::size_t cells = std::size_t(1) << (level + 1);
    std::vector<std::int64_t> cuts(cells + 1);
    std::vector<std::int64_t> tags(cells);
    for (std::size_t i = 0; i <= cells; ++i) cuts[i] = static_cast<std::int64_t>(2 * i);
    for (std::size_t i = 0; i < cells; ++i) {
        switch (style) {
            case 1: tags[i] = static_cast<std::int64_t>(2 * i); break;      // left endpoints
            case 2: tags[i] = static_cast<std::int64_t>(2 * i + 2); break;  // right endpoints
            default: tags[i] = static_cast<std::int64_t>(2 * i + 1); break; // midpoints
        }
    }
    return TaggedPartition::dyadic(lg, std::move(cuts), std::move(tags));
}

}  // namespace

SeparabilityWitness<TaggedPartition> riemann_separability(const Integrand& f) {
    (void)f;  // density is exact by self-membership; no sums needed
    SeparabilityWitness<TaggedPartition> w;
    w.beta = [](const TaggedPartition& alpha) { return alpha; };
    w.enumerate = [](const TaggedPartition& alpha, const Nat& k) {
        std::optional<TaggedPartition> decoded = decode_partition(k);
        if (decoded && partition_leq(alpha, *decoded)) return *decoded;
        // Ranks that are not codes of dominating partitions map to
        // uniform partitions at or below mesh(alpha), cycling through
        // three depths and three tag styles.
        Nat q = k / 3;
        unsigned style = static_cast<unsigned>(mpz_class(k % 3).get_ui());
        std::size_t depth_step = static_cast<std::size_t>(mpz_class(q % 3).get_ui());
        std::size_t level = dyadic_witness(alpha) + depth_step;
        return uniform_with_tag_style(level, style);
    };
    w.density_precision = [](const TaggedPartition& alpha, const TaggedPartition& beta2, const Rational& eps) {
        if (!partition_leq(alpha, beta2))
            throw std::invalid_argument("density_precision: candidate does not dominate the base index");
        if (eps.sign() < 0) throw std::invalid_argument("density_precision: negative tolerance");
        // beta2 itself is enumerated (rational coordinates), so its own
        // rank reproduces its sum exactly: distance zero.
        return encode_partition(beta2);
    };
    return w;
}

RiemannNet riemann_net(const Integrand& f) {
    RiemannNet rn;
    rn.directed = partition_directed();
    rn.cofinal = dyadic_cofinal_sequence();
    auto cache = std::make_shared<std::pair<std::mutex, std::map<Fingerprint, CReal>>>();
    rn.net.eval = [f, cache](const TaggedPartition& w) {
        Fingerprint fp = fingerprint(w);
        {
            std::lock_guard<std::mutex> lk(cache->first);
            auto it = cache->second.find(fp);
            if (it != cache->second.end()) return it->second;
        }
        CReal s = riemann_sum(f, w);
        std::lock_guard<std::mutex> lk(cache->first);
        return cache->second.emplace(fp, std::move(s)).first->second;
    };
    rn.witness = riemann_separability(f);
    rn.seq_modulus = [f](const Rational& eps) { return riemann_seq_modulus(f, eps); };
    return rn;
}

CReal integrate(const Integrand& f, long p) {
    if (p < 0) throw std::invalid_argument("integrate: negative precision");
    if (p > precision_ceiling())
        throw ResourceError("integrate: precision " + std::to_string(p) + " exceeds the ceiling " +
                            std::to_string(precision_ceiling()) + " (raise " + kCeilingEnvVar + " to override)");
    RiemannNet rn = riemann_net(f);
    return net_limit(rn.directed, rn.cofinal, rn.net, rn.seq_modulus);
}

WeakProbeReport weak_integrability_probe(const Integrand& f, std::uint64_t seed, std::size_t trials,
                                         std::size_t depth, const Rational& tol) {
    if (depth < 2) throw std::invalid_argument("weak_integrability_probe: depth must be at least 2");
    if (tol.sign() < 0) throw std::invalid_argument("weak_integrability_probe: negative tolerance");
    int p = static_cast<int>(depth) + 6;
    if (p > precision_ceiling()) p = static_cast<int>(precision_ceiling());
    Rational integral = integrate(f, p).approx(p);
    Rational slack = pow2(-(p - 1));  // two approximations, 2^-p each

    WeakProbeReport report;
    report.trials = trials;
    report.depth = depth;
    report.pairwise_pass = true;
    report.consistent_pass = true;
    report.max_deviation = Rational(0);
    report.max_tail_deviation = Rational(0);

    SeededRng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<Rational> sums(depth + 1);
        std::vector<Rational> eps(depth + 1);
        for (std::size_t n = 0; n <= depth; ++n) {
            TaggedPartition w = random_partition_mesh_below(rng, pow2(-static_cast<long>(n)));
            sums[n] = riemann_sum(f, w).approx(p);
            eps[n] = eps_for_mesh(f, mesh(w));
        }
        for (std::size_t m = 0; m <= depth; ++m) {
            for (std::size_t n = m + 1; n <= depth; ++n)
                if (abs(sums[m] - sums[n]) > eps[m] + eps[n] + tol + slack) report.pairwise_pass = false;
            Rational dev = abs(sums[m] - integral);
            report.max_deviation = max(report.max_deviation, dev);
            if (m >= depth / 2) report.max_tail_deviation = max(report.max_tail_deviation, dev);
            if (dev > eps[m] + tol + slack) report.consistent_pass = false;
        }
    }
    return report;
}

}  // namespace cofinal
