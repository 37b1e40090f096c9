// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "cofinal/rational.hpp"

namespace cofinal {

/// One output line of a CLI run. All fields are preformatted strings;
/// none may contain a comma or newline (enforced at write time).
struct ReportRow {
    std::string run_id;
    std::string command;
    std::string fn;
    std::string param;
    std::string value;
    std::string bound;
    std::string status;
};

inline constexpr const char* kCsvHeader = "run_id,command,fn,param,value,bound,status";

/// Digits needed so that a 2^-p window is visible in decimal:
/// ceil(p * log10(2)) + 2.
int decimal_digits_for(long p);

/// Decimal rendering of v adequate for precision p (see
/// Rational::decimal for the truncation marker).
std::string render_decimal(const Rational& v, long p);

/// FNV-1a hash of the canonical config string, as 16 hex digits.
/// Identical configuration therefore reproduces the run id.
std::string run_id_for(const std::string& canonical_config);

void write_csv(std::ostream& os, const std::vector<ReportRow>& rows);
void write_table(std::ostream& os, const std::vector<ReportRow>& rows);

}  // namespace cofinal
