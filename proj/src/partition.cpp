// SPDX-License-Identifier: Apache-2.0

#include "cofinal/partition.hpp"

#include <stdexcept>
#include <utility>

namespace cofinal {

struct TaggedPartition::Data {
    bool dyadic = false;
    Dyadic d;
    General g;
    Rational mesh;
};

namespace {

std::int64_t pow2_i64(int e) {
    if (e < 0 || e > 62) throw std::invalid_argument("pow2_i64: exponent out of range");
    return std::int64_t(1) << e;
}

Rational dyadic_value(std::int64_t num, int lg) { return Rational(Nat(static_cast<long>(num)), Nat(1)) * pow2(-lg); }

}  // namespace

TaggedPartition::TaggedPartition(std::vector<Rational> cuts, std::vector<Rational> tags) {
    if (cuts.size() < 2) throw std::invalid_argument("TaggedPartition: needs at least one cell");
    if (tags.size() != cuts.size() - 1) throw std::invalid_argument("TaggedPartition: one tag per cell");
    if (cuts.front() != Rational(0) || cuts.back() != Rational(1))
        throw std::invalid_argument("TaggedPartition: cuts must run from 0 to 1");
    Rational widest(0);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!(cuts[i] < cuts[i + 1])) throw std::invalid_argument("TaggedPartition: cuts must strictly increase");
        if (tags[i] < cuts[i] || tags[i] > cuts[i + 1])
            throw std::invalid_argument("TaggedPartition: tag outside its cell");
        widest = max(widest, cuts[i + 1] - cuts[i]);
    }
    auto data = std::make_shared<Data>();
    data->dyadic = false;
    data->g.cuts = std::move(cuts);
    data->g.tags = std::move(tags);
    data->mesh = std::move(widest);
    data_ = std::move(data);
}

TaggedPartition TaggedPartition::dyadic(int lg, std::vector<std::int64_t> cuts, std::vector<std::int64_t> tags) {
    if (lg < 1 || lg > 62) throw std::invalid_argument("TaggedPartition: denominator exponent out of range");
    if (cuts.size() < 2) throw std::invalid_argument("TaggedPartition: needs at least one cell");
    if (tags.size() != cuts.size() - 1) throw std::invalid_argument("TaggedPartition: one tag per cell");
    const std::int64_t one = pow2_i64(lg);
    if (cuts.front() != 0 || cuts.back() != one)
        throw std::invalid_argument("TaggedPartition: cuts must run from 0 to 1");
    std::int64_t widest = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        std::int64_t gap = cuts[i + 1] - cuts[i];
        if (gap <= 0) throw std::invalid_argument("TaggedPartition: cuts must strictly increase");
        if (tags[i] < cuts[i] || tags[i] > cuts[i + 1])
            throw std::invalid_argument("TaggedPartition: tag outside its cell");
        if (gap > widest) widest = gap;
    }
    auto data = std::make_shared<Data>();
    data->dyadic = true;
    data->d.lg = lg;
    data->d.cuts = std::move(cuts);
    data->d.tags = std::move(tags);
    data->mesh = dyadic_value(widest, lg);
    return TaggedPartition(std::move(data));
}

std::size_t TaggedPartition::cells() const {
    return (data_->dyadic ? data_->d.cuts.size() : data_->g.cuts.size()) - 1;
}

Rational TaggedPartition::cut(std::size_t i) const {
    if (data_->dyadic) return dyadic_value(data_->d.cuts.at(i), data_->d.lg);
    return data_->g.cuts.at(i);
}

Rational TaggedPartition::tag(std::size_t i) const {
    if (data_->dyadic) return dyadic_value(data_->d.tags.at(i), data_->d.lg);
    return data_->g.tags.at(i);
}

const Rational& TaggedPartition::mesh_value() const { return data_->mesh; }

const TaggedPartition::Dyadic* TaggedPartition::dyadic_rep() const {
    return data_->dyadic ? &data_->d : nullptr;
}

const TaggedPartition::General* TaggedPartition::general_rep() const {
    return data_->dyadic ? nullptr : &data_->g;
}

bool operator==(const TaggedPartition& a, const TaggedPartition& b) {
    if (a.data_ == b.data_) return true;
    if (a.cells() != b.cells()) return false;
    if (a.mesh_value() != b.mesh_value()) return false;
    const auto* da = a.dyadic_rep();
    const auto* db = b.dyadic_rep();
    if (da && db && da->lg == db->lg) return da->cuts == db->cuts && da->tags == db->tags;
    for (std::size_t i = 0; i <= a.cells(); ++i)
        if (a.cut(i) != b.cut(i)) return false;
    for (std::size_t i = 0; i < a.cells(); ++i)
        if (a.tag(i) != b.tag(i)) return false;
    return true;
}

std::string TaggedPartition::describe() const {
    return "cells=" + std::to_string(cells()) + " mesh=" + mesh_value().str();
}

const Rational& mesh(const TaggedPartition& w) { return w.mesh_value(); }

bool partition_leq(const TaggedPartition& w, const TaggedPartition& w2) {
    return mesh(w2) <= mesh(w);
}

TaggedPartition partition_join(const TaggedPartition& a, const TaggedPartition& b) {
    return mesh(b) <= mesh(a) ? b : a;
}

TaggedPartition dyadic_cofinal(std::size_t n) {
    if (n > 24) throw std::length_error("dyadic_cofinal: depth beyond materializable range");
    int lg = static_cast<int>(n) + 2;
    std::size_t cells = std::size_t(1) << (n + 1);
    std::vector<std::int64_t> cuts(cells + 1);
    std::vector<std::int64_t> tags(cells);
    for (std::size_t i = 0; i <= cells; ++i) cuts[i] = static_cast<std::int64_t>(2 * i);
    for (std::size_t i = 0; i < cells; ++i) tags[i] = static_cast<std::int64_t>(2 * i + 1);
    return TaggedPartition::dyadic(lg, std::move(cuts), std::move(tags));
}

std::size_t dyadic_witness(const TaggedPartition& alpha) {
    // Least n with 2^-(n+1) <= mesh, i.e. n+1 >= ceil_log2(1/mesh).
    long n = ceil_log2(Rational(1) / mesh(alpha)) - 1;
    return n < 0 ? 0 : static_cast<std::size_t>(n);
}

Directed<TaggedPartition> partition_directed() {
    return Directed<TaggedPartition>{
        [](const TaggedPartition& a, const TaggedPartition& b) { return partition_leq(a, b); },
        [](const TaggedPartition& a, const TaggedPartition& b) { return partition_join(a, b); }};
}

Cofinal<TaggedPartition> dyadic_cofinal_sequence() {
    return Cofinal<TaggedPartition>{[](std::size_t n) { return dyadic_cofinal(n); },
                                    [](const TaggedPartition& alpha) { return dyadic_witness(alpha); }, true};
}

/*
 * Partition codes. Layout, least significant bit first:
 *   gamma(K) gamma(zz(num)) gamma(den) ... for the K+1 cuts then K tags
 * followed by a single 1 marker bit on top so the bit length is
 * recoverable. gamma is the Elias code (unary length prefix, then the
 * value's binary digits); zz folds the sign into a positive integer.
 * Decoding rejects anything that does not parse exactly to the end or
 * fails partition validation.
 */
namespace {

struct BitSink {
    std::vector<std::uint64_t> words;
    std::size_t bits = 0;
    void push(bool b) {
        if (bits % 64 == 0) words.push_back(0);
        if (b) words.back() |= std::uint64_t(1) << (bits % 64);
        ++bits;
    }
};

void push_gamma(BitSink& sink, const mpz_class& n) {
    // n >= 1: sizeinbase-1 zeros, then n's bits from the top.
    std::size_t top = mpz_sizeinbase(n.get_mpz_t(), 2) - 1;
    for (std::size_t i = 0; i < top; ++i) sink.push(false);
    for (std::size_t i = top + 1; i-- > 0;) sink.push(mpz_tstbit(n.get_mpz_t(), i) != 0);
}

mpz_class zigzag_plus1(const mpz_class& num) {
    return sgn(num) >= 0 ? mpz_class(2 * num + 1) : mpz_class(-2 * num);
}

void push_rational(BitSink& sink, const Rational& r) {
    push_gamma(sink, zigzag_plus1(r.numerator()));
    push_gamma(sink, r.denominator());
}

struct BitSource {
    std::vector<std::uint64_t> words;
    std::size_t bits = 0;   // payload length (marker stripped)
    std::size_t cursor = 0;
    bool take(bool& out) {
        if (cursor >= bits) return false;
        out = (words[cursor / 64] >> (cursor % 64)) & 1;
        ++cursor;
        return true;
    }
    bool read_gamma(mpz_class& out) {
        std::size_t zeros = 0;
        bool b = false;
        for (;;) {
            if (!take(b) || zeros > 4096) return false;
            if (b) break;
            ++zeros;
        }
        out = 1;
        for (std::size_t i = 0; i < zeros; ++i) {
            if (!take(b)) return false;
            out <<= 1;
            if (b) out |= 1;
        }
        return true;
    }
    bool read_rational(Rational& out) {
        mpz_class zz, den;
        if (!read_gamma(zz) || !read_gamma(den)) return false;
        mpz_class num = mpz_odd_p(zz.get_mpz_t()) ? mpz_class((zz - 1) / 2) : mpz_class(-zz / 2);
        out = Rational(Nat(num), Nat(den));
        return true;
    }
};

}  // namespace

Nat encode_partition(const TaggedPartition& w) {
    BitSink sink;
    std::size_t k = w.cells();
    push_gamma(sink, mpz_class(static_cast<unsigned long>(k)));
    for (std::size_t i = 0; i <= k; ++i) push_rational(sink, w.cut(i));
    for (std::size_t i = 0; i < k; ++i) push_rational(sink, w.tag(i));
    sink.push(true);  // top marker
    mpz_class code;
    mpz_import(code.get_mpz_t(), sink.words.size(), -1, sizeof(std::uint64_t), 0, 0, sink.words.data());
    return Nat(code);
}

std::optional<TaggedPartition> decode_partition(const Nat& code) {
    if (sgn(code) <= 0) return std::nullopt;
    std::size_t total = mpz_sizeinbase(code.get_mpz_t(), 2);
    if (total < 2) return std::nullopt;  // marker alone carries no payload
    BitSource src;
    src.bits = total - 1;  // strip the top marker bit
    std::size_t n_words = (total + 63) / 64;
    src.words.assign(n_words, 0);
    std::size_t written = 0;
    mpz_export(src.words.data(), &written, -1, sizeof(std::uint64_t), 0, 0, code.get_mpz_t());
    mpz_class cells_z;
    if (!src.read_gamma(cells_z)) return std::nullopt;
    if (cells_z < 1 || cells_z > (1 << 20)) return std::nullopt;
    std::size_t k = static_cast<std::size_t>(cells_z.get_ui());
    std::vector<Rational> cuts(k + 1), tags(k);
    try {
        for (std::size_t i = 0; i <= k; ++i)
            if (!src.read_rational(cuts[i])) return std::nullopt;
        for (std::size_t i = 0; i < k; ++i)
            if (!src.read_rational(tags[i])) return std::nullopt;
        if (src.cursor != src.bits) return std::nullopt;  // trailing garbage
        return TaggedPartition(std::move(cuts), std::move(tags));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

TaggedPartition random_dominating_partition(SeededRng& rng, std::size_t n) {
    if (n > 24) throw std::length_error("random_dominating_partition: depth beyond materializable range");
    bool jitter = rng.below(2) == 1;
    // Uniform cut spacing at level L keeps the mesh at 2^-L; the jittered
    // variant works one level deeper so displaced cuts still respect the
    // 2^-(n+1) budget: gaps are (8 + d') - d <= 15 < 16 units at lg L+3.
    std::size_t level = jitter ? n + 2 : n + 1 + rng.below(2);
    int lg = static_cast<int>(level) + 3;
    std::size_t cells = std::size_t(1) << level;
    std::vector<std::int64_t> cuts(cells + 1);
    std::vector<std::int64_t> tags(cells);
    cuts[0] = 0;
    for (std::size_t i = 1; i < cells; ++i) {
        std::int64_t base = static_cast<std::int64_t>(8 * i);
        cuts[i] = jitter ? base + static_cast<std::int64_t>(rng.below(8)) : base;
    }
    cuts[cells] = static_cast<std::int64_t>(8 * cells);
    for (std::size_t i = 0; i < cells; ++i) {
        std::uint64_t span = static_cast<std::uint64_t>(cuts[i + 1] - cuts[i]);
        tags[i] = cuts[i] + static_cast<std::int64_t>(rng.below(span + 1));
    }
    return TaggedPartition::dyadic(lg, std::move(cuts), std::move(tags));
}

TaggedPartition random_partition_mesh_below(SeededRng& rng, const Rational& bound) {
    if (bound.sign() <= 0) throw std::invalid_argument("random_partition_mesh_below: bound must be positive");
    // Least L with 2^-L <= bound, then sample one level deeper: the
    // result's mesh is at most 2^-(L+1), strictly below the bound.
    long l = prec_for(bound);
    return random_dominating_partition(rng, static_cast<std::size_t>(l));
}

TaggedPartition random_general_partition(SeededRng& rng) {
    // Three cells over an odd base denominator D: cuts {0, a/2D, b/2D, 1}
    // with a <= D <= b, b - a <= D, so every gap is at most 1/2. Tags are
    // drawn on the 4D grid inside each cell.
    long d = 3 + 2 * static_cast<long>(rng.below(7));
    long a = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(d)));
    long lo = std::max(a + 1, d);
    long hi = std::min(a + d, 2 * d - 1);
    long b = lo + static_cast<long>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
    std::vector<Rational> cuts{Rational(0), Rational(a, 2 * d), Rational(b, 2 * d), Rational(1)};
    std::vector<Rational> tags;
    for (std::size_t i = 0; i < 3; ++i) {
        long from = 0, to = 0;
        // Cell bounds on the 4D grid: cut numerators doubled.
        long edges[4] = {0, 2 * a, 2 * b, 4 * d};
        from = edges[i];
        to = edges[i + 1];
        long t = from + static_cast<long>(rng.below(static_cast<std::uint64_t>(to - from + 1)));
        tags.emplace_back(t, 4 * d);
    }
    return TaggedPartition(std::move(cuts), std::move(tags));
}

}  // namespace cofinal
