// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cofinal/rational.hpp"

namespace cofinal {

/*
 * Deterministic random source. Every sampling entry point takes an
 * explicit 64-bit seed and all draws go through below(), so a report
 * is replayable from its seed alone. std::mt19937_64 has a portable
 * guaranteed output sequence; the library distributions do not, which
 * is why rejection sampling is done by hand here.
 */
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform in [0, n); unbiased via rejection. Requires n > 0.
    std::uint64_t below(std::uint64_t n);

    /// Independent stream derived from this one's seed position.
    SeededRng fork() { return SeededRng(next() ^ 0x6a09e667f3bcc909ULL); }

    /// Uniform draw from the dyadic grid lo + j*(hi-lo)/2^grid_lg.
    Rational rational_between(const Rational& lo, const Rational& hi, unsigned grid_lg = 16);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace cofinal
