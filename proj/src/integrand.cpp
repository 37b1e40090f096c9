// SPDX-License-Identifier: Apache-2.0

#include "cofinal/integrand.hpp"

#include <stdexcept>

namespace cofinal {

Integrand lift_integrand(std::string id, std::function<Rational(const Rational&)> exact,
                         std::function<Rational(const Rational&)> omega) {
    if (!exact || !omega) throw std::invalid_argument("lift_integrand: missing function or modulus");
    auto eval = [exact, omega](const CReal& x) {
        return CReal::from_fn([exact, omega, x](int n) {
            long m = prec_for(omega(pow2(-(n > 0 ? n : 0))));
            Rational probe = x.approx(static_cast<int>(m));
            Rational clamped = max(Rational(0), min(Rational(1), probe));
            return exact(clamped);
        });
    };
    return Integrand{std::move(id), std::move(eval), std::move(omega), std::move(exact)};
}

const std::vector<RegistryEntry>& integrand_registry() {
    static const std::vector<RegistryEntry> registry = [] {
        std::vector<RegistryEntry> r;
        r.push_back({lift_integrand(
                         "const1", [](const Rational&) { return Rational(1); },
                         [](const Rational&) { return Rational(1); }),
                     Rational(1)});
        r.push_back({lift_integrand(
                         "linear", [](const Rational& x) { return x; },
                         [](const Rational& eps) { return eps; }),
                     Rational(1, 2)});
        // |x^2 - y^2| = |x+y||x-y| <= 2|x-y| on [0,1].
        r.push_back({lift_integrand(
                         "square", [](const Rational& x) { return x * x; },
                         [](const Rational& eps) { return eps / Rational(2); }),
                     Rational(1, 3)});
        r.push_back({lift_integrand(
                         "absdev", [](const Rational& x) { return abs(x - Rational(1, 2)); },
                         [](const Rational& eps) { return eps; }),
                     Rational(1, 4)});
        return r;
    }();
    return registry;
}

std::optional<RegistryEntry> find_integrand(const std::string& id) {
    for (const RegistryEntry& e : integrand_registry())
        if (e.f.id == id) return e;
    return std::nullopt;
}

}  // namespace cofinal
