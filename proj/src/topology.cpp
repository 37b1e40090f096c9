// SPDX-License-Identifier: Apache-2.0

#include "cofinal/topology.hpp"

namespace cofinal {

RegularPair shrink_to_regular(const Ball& u) {
    return RegularPair(u, u.radius / Rational(2));
}

Classification classify(const RegularPair& pair, const CReal& x) {
    CReal d = abs(x - pair.center());
    Branch b = compare_within(d, pair.inner_radius(), pair.outer_radius());
    if (b.kind == Branch::Kind::below_upper) return Classification{Classification::Kind::in_outer, std::nullopt};
    return Classification{Classification::Kind::not_touch_inner, std::nullopt};
}

Classification decide_convergent(const std::function<CReal(std::size_t)>& seq,
                                 const std::function<std::size_t(const Rational&)>& modulus,
                                 const CReal& limit,
                                 const RegularPair& pair,
                                 std::size_t audit_budget) {
    if (!classify(pair, limit).in_outer())
        throw std::invalid_argument("decide_convergent: limit does not classify inside the pair");
    std::size_t n_stop = modulus(pair.inner_radius() / Rational(2));
    std::optional<std::size_t> first_fail;
    for (std::size_t n = 0; n <= n_stop; ++n) {
        if (!classify(pair, seq(n)).in_outer()) {
            first_fail = n;
            break;
        }
    }
    if (first_fail) return Classification{Classification::Kind::not_touch_inner, first_fail};
    for (std::size_t n = n_stop + 1; n <= n_stop + audit_budget; ++n) {
        if (!classify(pair, seq(n)).in_outer())
            throw ContractViolation("decide_convergent: term beyond the modulus left the pair at index " +
                                    std::to_string(n));
    }
    return Classification{Classification::Kind::in_outer, std::nullopt};
}

}  // namespace cofinal
