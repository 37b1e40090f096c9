// SPDX-License-Identifier: Apache-2.0

#include "cofinal/rational.hpp"

#include <stdexcept>

namespace cofinal {

Rational::Rational(const Nat& num, const Nat& den) : q_(num, den) {
    if (sgn(den) == 0) throw std::domain_error("Rational: zero denominator");
    q_.canonicalize();
}

Rational::Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_.canonicalize();
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(mpq_class(a.q_ / b.q_));
}

std::string Rational::str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_str();
}

std::string Rational::decimal(int digits) const {
    if (digits < 0) throw std::domain_error("Rational::decimal: negative digit count");
    mpz_class num = ::abs(q_.get_num());
    const mpz_class& den = q_.get_den();
    mpz_class ip = num / den;
    mpz_class rem = num % den;
    std::string out = sign() < 0 ? "-" : "";
    out += ip.get_str();
    if (digits == 0) {
        if (rem != 0) out += '~';
        return out;
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class frac = rem * scale / den;
    bool truncated = rem * scale % den != 0;
    std::string fs = frac.get_str();
    out += '.';
    out += std::string(static_cast<std::size_t>(digits) - fs.size(), '0');
    out += fs;
    if (truncated) out += '~';
    return out;
}

Rational pow2(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e >= 0 ? e : -e));
    return e >= 0 ? Rational(Nat(p), Nat(1)) : Rational(Nat(1), Nat(p));
}

long ceil_log2(const Rational& r) {
    if (r.sign() <= 0) throw std::domain_error("ceil_log2: requires a positive argument");
    // 2^s >= p/q  iff  q*2^s >= p  (p, q > 0).
    const mpz_class p = r.numerator();
    const mpz_class q = r.denominator();
    long s = static_cast<long>(mpz_sizeinbase(p.get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2)) - 1;
    auto holds = [&](long e) {
        mpz_class lhs = q;
        if (e >= 0) {
            mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<unsigned long>(e));
            return lhs >= p;
        }
        mpz_class rhs = p;
        mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<unsigned long>(-e));
        return lhs >= rhs;
    };
    while (!holds(s)) ++s;
    while (holds(s - 1)) --s;
    return s;
}

long prec_for(const Rational& eps) {
    if (eps.sign() <= 0) throw std::domain_error("prec_for: requires a positive bound");
    // 2^-n <= eps  iff  2^n >= 1/eps  iff  n >= ceil_log2(1/eps); n is a natural.
    long n = ceil_log2(Rational(1) / eps);
    return n < 0 ? 0 : n;
}

std::optional<Rational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class n(text, 10);
            return Rational(Nat(n), Nat(1));
        }
        std::string ns = text.substr(0, slash);
        std::string ds = text.substr(slash + 1);
        if (ns.empty() || ds.empty()) return std::nullopt;
        mpz_class n(ns, 10);
        mpz_class d(ds, 10);
        if (sgn(d) == 0) return std::nullopt;
        return Rational(Nat(n), Nat(d));
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

}  // namespace cofinal
