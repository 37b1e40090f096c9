// SPDX-License-Identifier: Apache-2.0

#include "cofinal/sampler.hpp"

#include <stdexcept>

namespace cofinal {

std::uint64_t SeededRng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("SeededRng::below: empty range");
    if ((n & (n - 1)) == 0) return eng_() & (n - 1);
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = eng_();
    while (v >= limit) v = eng_();
    return v % n;
}

Rational SeededRng::rational_between(const Rational& lo, const Rational& hi, unsigned grid_lg) {
    if (!(lo <= hi)) throw std::invalid_argument("SeededRng::rational_between: empty interval");
    if (grid_lg > 62) throw std::invalid_argument("SeededRng::rational_between: grid too fine");
    std::uint64_t cells = 1ULL << grid_lg;
    Rational j(static_cast<long>(below(cells + 1)));
    return lo + (hi - lo) * j / Rational(static_cast<long>(cells));
}

}  // namespace cofinal
