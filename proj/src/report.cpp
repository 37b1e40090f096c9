// SPDX-License-Identifier: Apache-2.0

#include "cofinal/report.hpp"

#include <array>
#include <stdexcept>

namespace cofinal {

int decimal_digits_for(long p) {
    if (p < 0) p = 0;
    // ceil(p * log10 2) via the over-approximation 30103/100000, which
    // agrees with the exact value for every p this tool can reach.
    long scaled = (p * 30103 + 99999) / 100000;
    return static_cast<int>(scaled) + 2;
}

std::string render_decimal(const Rational& v, long p) { return v.decimal(decimal_digits_for(p)); }

std::string run_id_for(const std::string& canonical_config) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : canonical_config) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

namespace {

std::array<const std::string*, 7> fields(const ReportRow& r) {
    return {&r.run_id, &r.command, &r.fn, &r.param, &r.value, &r.bound, &r.status};
}

void check_clean(const ReportRow& r) {
    for (const std::string* f : fields(r))
        if (f->find(',') != std::string::npos || f->find('\n') != std::string::npos)
            throw std::invalid_argument("ReportRow: fields must not contain commas or newlines");
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ReportRow>& rows) {
    os << kCsvHeader << '\n';
    for (const ReportRow& r : rows) {
        check_clean(r);
        auto fs = fields(r);
        for (std::size_t i = 0; i < fs.size(); ++i) os << (i ? "," : "") << *fs[i];
        os << '\n';
    }
}

void write_table(std::ostream& os, const std::vector<ReportRow>& rows) {
    static const std::array<const char*, 7> headers = {"run_id", "command", "fn",
                                                       "param",  "value",   "bound", "status"};
    std::array<std::size_t, 7> width{};
    for (std::size_t i = 0; i < headers.size(); ++i) width[i] = std::string(headers[i]).size();
    for (const ReportRow& r : rows) {
        check_clean(r);
        auto fs = fields(r);
        for (std::size_t i = 0; i < fs.size(); ++i) width[i] = std::max(width[i], fs[i]->size());
    }
    auto line = [&](const std::array<const std::string*, 7>& fs) {
        for (std::size_t i = 0; i < fs.size(); ++i) {
            os << *fs[i];
            if (i + 1 < fs.size()) os << std::string(width[i] - fs[i]->size() + 2, ' ');
        }
        os << '\n';
    };
    std::array<std::string, 7> hs;
    std::array<const std::string*, 7> hp{};
    for (std::size_t i = 0; i < headers.size(); ++i) {
        hs[i] = headers[i];
        hp[i] = &hs[i];
    }
    line(hp);
    for (const ReportRow& r : rows) line(fields(r));
}

}  // namespace cofinal
