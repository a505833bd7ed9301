// rational.hpp -- exact nonnegative-friendly rational arithmetic for timestamps
//
// All time handling in this library is exact: timestamps, epsilon values and
// interval endpoints are rationals, never floating point. The boundary test
// x <= floor(x) + eps must be decided exactly, so every comparison here goes
// through integer cross-multiplication.

#pragma once

#include <cstdint>
#include <compare>
#include <stdexcept>
#include <string>

namespace rtdig {

/// Exact rational number with canonical form: denominator > 0 and
/// gcd(|numerator|, denominator) == 1. Intermediate products are computed
/// in 128-bit and checked before narrowing back to 64-bit.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_negative() const { return num_ < 0; }

    /// Largest integer <= *this.
    std::int64_t floor() const;
    /// Smallest integer >= *this.
    std::int64_t ceil() const;
    /// *this - floor(*this), in [0, 1).
    Rational frac() const;

    Rational operator-() const { return Rational(-num_, den_); }
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::strong_ordering operator<=>(const Rational& o) const;

    /// Canonical rendering: bare integer, or "p/q".
    std::string str() const;

    /// Parses "p/q", a bare integer, or an exact decimal literal like "2.75".
    /// Throws std::invalid_argument on malformed input.
    static Rational parse(const std::string& text);

private:
    std::int64_t num_;
    std::int64_t den_;
};

inline Rational midpoint(const Rational& a, const Rational& b) {
    return (a + b) / Rational(2);
}

} // namespace rtdig
