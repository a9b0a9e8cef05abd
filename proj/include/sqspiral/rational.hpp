#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "errors.hpp"

namespace sqspiral {

// Exact fraction over int64, always in lowest terms with a positive
// denominator. Intermediate products go through __int128 and overflow throws.
class rational {
public:
    constexpr rational() = default;
    constexpr rational(std::int64_t n) : num_(n) {} // NOLINT(google-explicit-constructor)
    rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    bool is_integer() const noexcept { return den_ == 1; }
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::int64_t floor() const noexcept
    {
        std::int64_t q = num_ / den_;
        if ((num_ % den_ != 0) && (num_ < 0))
            --q;
        return q;
    }
    std::int64_t ceil() const noexcept { return -rational(-num_, den_).floor(); }

    friend rational operator+(const rational& x, const rational& y)
    {
        return make(wide(x.num_) * y.den_ + wide(y.num_) * x.den_, wide(x.den_) * y.den_);
    }
    friend rational operator-(const rational& x, const rational& y)
    {
        return make(wide(x.num_) * y.den_ - wide(y.num_) * x.den_, wide(x.den_) * y.den_);
    }
    friend rational operator*(const rational& x, const rational& y)
    {
        return make(wide(x.num_) * y.num_, wide(x.den_) * y.den_);
    }
    friend rational operator/(const rational& x, const rational& y)
    {
        if (y.num_ == 0)
            throw std::domain_error("rational: division by zero");
        return make(wide(x.num_) * y.den_, wide(x.den_) * y.num_);
    }
    rational operator-() const { return make(-wide(num_), den_); }

    rational& operator+=(const rational& y) { return *this = *this + y; }
    rational& operator-=(const rational& y) { return *this = *this - y; }
    rational& operator*=(const rational& y) { return *this = *this * y; }

    friend bool operator==(const rational&, const rational&) = default;
    friend std::strong_ordering operator<=>(const rational& x, const rational& y)
    {
        return wide(x.num_) * y.den_ <=> wide(y.num_) * x.den_;
    }

    // "p" or "p/q".
    std::string str() const
    {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const rational& r) { return os << r.str(); }

private:
    using i128 = __int128;
    static i128 wide(std::int64_t v) { return v; }

    static rational make(i128 n, i128 d)
    {
        if (d == 0)
            throw std::domain_error("rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 a = n < 0 ? -n : n, b = d;
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("rational: result does not fit in 64 bits");
        rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    void assign(std::int64_t n, std::int64_t d) { *this = make(n, d); }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

// Accepts "p", "-p", "p/q", and decimals with a finite expansion ("9.5").
inline rational parse_rational(const std::string& text)
{
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-'))
        neg = text[i++] == '-';
    auto digits = [&](std::int64_t& out, std::int64_t& count) {
        out = 0;
        count = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            if (out > (INT64_MAX - 9) / 10)
                throw parse_error("rational literal too large: " + text);
            out = out * 10 + (text[i++] - '0');
            ++count;
        }
    };
    std::int64_t whole = 0, nd = 0;
    digits(whole, nd);
    rational r(whole);
    if (i < text.size() && text[i] == '.') {
        ++i;
        std::int64_t frac = 0, fd = 0;
        digits(frac, fd);
        if (fd == 0 && nd == 0)
            throw parse_error("malformed rational: '" + text + "'");
        std::int64_t scale = 1;
        for (std::int64_t k = 0; k < fd; ++k)
            scale *= 10;
        r = r + rational(frac, scale);
        nd += fd;
    } else if (i < text.size() && text[i] == '/') {
        ++i;
        std::int64_t d = 0, dd = 0;
        digits(d, dd);
        if (dd == 0 || d == 0)
            throw parse_error("malformed rational: '" + text + "'");
        r = rational(whole, d);
    }
    if (nd == 0 || i != text.size())
        throw parse_error("malformed rational: '" + text + "'");
    return neg ? -r : r;
}

} // namespace sqspiral
