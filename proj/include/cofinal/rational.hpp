// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace cofinal {

/// Unbounded natural number. Enumeration indices of generated sets are
/// Goedel-style codes and routinely exceed machine words.
using Nat = mpz_class;

/// Arbitrary-precision fraction. Always canonical: denominator > 0 and
/// gcd(numerator, denominator) = 1. Arithmetic is exact; there is no
/// rounding anywhere in this type.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}                      // NOLINT: implicit by design
    Rational(const Nat& n) : q_(n) {}                // NOLINT
    Rational(const Nat& num, const Nat& den);
    Rational(long num, long den);

    const mpz_class numerator() const { return q_.get_num(); }
    const mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.q_ + b.q_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.q_ - b.q_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.q_ * b.q_); }
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(mpq_class(-q_)); }

    Rational& operator+=(const Rational& b) { q_ += b.q_; return *this; }
    Rational& operator-=(const Rational& b) { q_ -= b.q_; return *this; }
    Rational& operator*=(const Rational& b) { q_ *= b.q_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    friend Rational abs(const Rational& a) { return Rational(mpq_class(::abs(a.q_))); }
    friend const Rational& min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
    friend const Rational& max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

    /// "p/q" for non-integers, "p" otherwise.
    std::string str() const;

    /// Decimal expansion truncated toward zero to `digits` fractional
    /// digits, with a trailing '~' whenever the expansion does not
    /// terminate within them. Purely integer arithmetic; never lossy
    /// without saying so.
    std::string decimal(int digits) const;

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) {}
    mpq_class q_;
};

/// 2^e as an exact rational; e may be negative.
Rational pow2(long e);

/// Smallest integer s with 2^s >= r. Requires r > 0.
long ceil_log2(const Rational& r);

/// Smallest natural n with 2^-n <= eps. Requires eps > 0.
long prec_for(const Rational& eps);

/// Parses "p/q" or "p" with optional sign. Denominator must be nonzero.
std::optional<Rational> parse_rational(const std::string& text);

}  // namespace cofinal
