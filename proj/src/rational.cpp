#include "rtdig/rational.hpp"

#include <cctype>
#include <numeric>

namespace rtdig {

namespace {

using Wide = __int128;

std::int64_t narrow(Wide v, const char* what) {
    if (v > Wide(INT64_MAX) || v < Wide(INT64_MIN)) {
        throw std::overflow_error(std::string("rational overflow in ") + what);
    }
    return static_cast<std::int64_t>(v);
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw std::domain_error("rational denominator must be nonzero");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num_ = g == 0 ? 0 : num / g;
    den_ = g == 0 ? 1 : den / g;
}

std::int64_t Rational::floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) {
        --q;
    }
    return q;
}

std::int64_t Rational::ceil() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) {
        ++q;
    }
    return q;
}

Rational Rational::frac() const {
    return *this - Rational(floor());
}

Rational Rational::operator+(const Rational& o) const {
    const Wide n = Wide(num_) * o.den_ + Wide(o.num_) * den_;
    const Wide d = Wide(den_) * o.den_;
    // Reduce in wide form first so the canonical value fits whenever possible.
    Wide a = n < 0 ? -n : n;
    Wide b = d;
    while (b != 0) {
        const Wide t = a % b;
        a = b;
        b = t;
    }
    const Wide g = a == 0 ? 1 : a;
    return Rational(narrow(n / g, "addition"), narrow(d / g, "addition"));
}

Rational Rational::operator-(const Rational& o) const {
    return *this + (-o);
}

Rational Rational::operator*(const Rational& o) const {
    // Cross-reduce before multiplying.
    const std::int64_t g1 = std::gcd(num_ < 0 ? -num_ : num_, o.den_);
    const std::int64_t g2 = std::gcd(o.num_ < 0 ? -o.num_ : o.num_, den_);
    const Wide n = Wide(num_ / g1) * (o.num_ / g2);
    const Wide d = Wide(den_ / g2) * (o.den_ / g1);
    return Rational(narrow(n, "multiplication"), narrow(d, "multiplication"));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) {
        throw std::domain_error("rational division by zero");
    }
    return *this * Rational(o.den_, o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
    const Wide lhs = Wide(num_) * o.den_;
    const Wide rhs = Wide(o.num_) * den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (den_ == 1) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("malformed rational: '" + text + "'");
    };

    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }

    auto read_digits = [&](std::int64_t& out, std::size_t& ndigits) {
        ndigits = 0;
        out = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            const Wide next = Wide(out) * 10 + (text[pos] - '0');
            out = narrow(next, "parse");
            ++pos;
            ++ndigits;
        }
    };

    std::int64_t intpart = 0;
    std::size_t intdigits = 0;
    read_digits(intpart, intdigits);
    if (intdigits == 0) return fail();

    if (pos == text.size()) {
        return Rational(negative ? -intpart : intpart);
    }

    if (text[pos] == '/') {
        ++pos;
        std::int64_t den = 0;
        std::size_t dendigits = 0;
        read_digits(den, dendigits);
        if (dendigits == 0 || pos != text.size() || den == 0) return fail();
        return Rational(negative ? -intpart : intpart, den);
    }

    if (text[pos] == '.') {
        ++pos;
        Wide scaled = intpart;
        Wide scale = 1;
        std::size_t fracdigits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            scaled = scaled * 10 + (text[pos] - '0');
            scale *= 10;
            ++pos;
            ++fracdigits;
            if (fracdigits > 18) {
                throw std::overflow_error("decimal literal too precise: '" + text + "'");
            }
        }
        if (fracdigits == 0 || pos != text.size()) return fail();
        const std::int64_t n = narrow(scaled, "parse");
        const std::int64_t d = narrow(scale, "parse");
        return Rational(negative ? -n : n, d);
    }

    return fail();
}

} // namespace rtdig
