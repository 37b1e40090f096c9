// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cofinal/rational.hpp"

namespace cofinal {

/*
 * Named, seeded property checks shared by the CLI suite and the tests.
 * Each property is deterministic in its config: identical config gives
 * an identical result, including the detail string.
 */
struct PropertyConfig {
    std::uint64_t seed = 1;
    std::optional<std::size_t> samples;  // overrides the property's default case count
    std::optional<long> depth;           // sequence depth / max precision, where meaningful
    std::string fn_id = "linear";        // integrand for function-parametric properties
    std::optional<Rational> tol;         // explicit value adds a strict observed-deviation ceiling
};

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::size_t cases = 0;
    std::string detail;  // deterministic; never timing or addresses
};

struct PropertyDef {
    std::string name;
    std::function<PropertyResult(const PropertyConfig&)> run;
};

/// All properties in their fixed reporting order.
const std::vector<PropertyDef>& property_registry();

const PropertyDef* find_property(const std::string& name);

}  // namespace cofinal
