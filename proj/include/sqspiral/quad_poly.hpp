#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "spiral_core.hpp"

namespace sqspiral {

struct quadratic_poly {
    rational a, b, c;

    friend bool operator==(const quadratic_poly&, const quadratic_poly&) = default;
    friend auto operator<=>(const quadratic_poly& x, const quadratic_poly& y)
    {
        if (auto o = x.a <=> y.a; o != 0)
            return o;
        if (auto o = x.b <=> y.b; o != 0)
            return o;
        return x.c <=> y.c;
    }

    // Integer-valued on the integers iff 2a, a+b and c are integers.
    bool integer_valued() const
    {
        return (a + a).is_integer() && (a + b).is_integer() && c.is_integer();
    }

    std::string str() const
    {
        auto term = [](const rational& v, const char* suffix, bool first) {
            std::string s;
            if (first)
                s = v.str();
            else
                s = (v < 0 ? " - " : " + ") + (v < 0 ? (-v).str() : v.str());
            return s + suffix;
        };
        return term(a, "*x^2", true) + term(b, "*x", false) + term(c, "", false);
    }
};

inline rational eval(const quadratic_poly& p, std::int64_t t)
{
    const rational tt(t);
    return (p.a * tt + p.b) * tt + p.c;
}

struct difference_table {
    std::vector<std::int64_t> level0, level1, level2, level3;
};

inline difference_table make_difference_table(const std::vector<std::int64_t>& seq)
{
    if (seq.size() < 2)
        throw std::invalid_argument("difference_table: need at least 2 values, got " + std::to_string(seq.size()));
    auto diff = [](const std::vector<std::int64_t>& v) {
        std::vector<std::int64_t> d;
        for (std::size_t i = 1; i < v.size(); ++i)
            d.push_back(v[i] - v[i - 1]);
        return d;
    };
    difference_table t;
    t.level0 = seq;
    t.level1 = diff(t.level0);
    t.level2 = diff(t.level1);
    t.level3 = diff(t.level2);
    return t;
}

// The constant second difference of a quadratic-consistent sequence.
inline std::int64_t second_differential(const std::vector<std::int64_t>& seq)
{
    if (seq.size() < 4)
        throw std::invalid_argument("second_differential: need at least 4 values, got " +
                                    std::to_string(seq.size()));
    const auto t = make_difference_table(seq);
    for (std::size_t i = 1; i < t.level2.size(); ++i) {
        if (t.level2[i] != t.level2[0])
            throw not_quadratic_error("sequence is not quadratic-consistent: second difference " +
                                          std::to_string(t.level2[i]) + " at index " + std::to_string(i) +
                                          " differs from " + std::to_string(t.level2[0]),
                                      i);
    }
    return t.level2[0];
}

// Interpolant through (1, f1), (2, f2), (3, f3) in Newton form, expanded.
inline quadratic_poly newton_quadratic(std::int64_t f1, std::int64_t f2, std::int64_t f3)
{
    const rational a = rational(f1 - 2 * f2 + f3, 2);
    const rational b = rational(f2 - f1) - 3 * a;
    const rational c = rational(f1) - a - b;
    return {a, b, c};
}

// q(t) = p(t + s).
inline quadratic_poly shift(const quadratic_poly& p, std::int64_t s)
{
    const rational r(s);
    return {p.a, p.b + 2 * p.a * r, p.c + p.a * r * r + p.b * r};
}

struct canonical_form {
    quadratic_poly poly;
    std::int64_t shift_used = 0;
};

// Shift-equivalent representative with b in [0, 2a).
inline canonical_form canonicalize(const quadratic_poly& p)
{
    if (p.a <= 0)
        throw std::domain_error("canonicalize: leading coefficient must be positive for an arm polynomial, got " +
                                p.a.str());
    const std::int64_t s = -(p.b / (2 * p.a)).floor();
    return {shift(p, s), s};
}

struct limit_angle {
    double angle = 0; // 2 sqrt(a) mod 2pi
    double drift = 0; // same, reduced to (-pi, pi]
    bool degenerate = false;
};

// Degenerate when the step limit sits on a multiple of pi: the drift sign is
// then not defined by the asymptote.
inline limit_angle limit_spiral_angle_for(double a)
{
    if (!(a > 0))
        throw std::domain_error("limit_spiral_angle: a must be positive");
    const double step = 2.0 * std::sqrt(a);
    limit_angle out;
    out.angle = reduce_positive(step);
    out.drift = reduce_signed(step);
    const double k = step / std::numbers::pi;
    out.degenerate = std::abs(k - std::round(k)) < 1e-12;
    return out;
}

inline limit_angle limit_spiral_angle(const quadratic_poly& p)
{
    if (p.a <= 0)
        throw std::domain_error("limit_spiral_angle: a must be positive, got " + p.a.str());
    return limit_spiral_angle_for(p.a.to_double());
}

// Parses sums of terms like "9.5*x^2 + 47.5*x + 19", "x^2 - 7/2*x", "-3".
// The result starts at zero; like terms accumulate.
inline quadratic_poly parse_poly(const std::string& text)
{
    quadratic_poly p{0, 0, 0};
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    bool any = false;
    skip();
    while (i < text.size()) {
        bool neg = false;
        if (text[i] == '+' || text[i] == '-') {
            neg = text[i] == '-';
            ++i;
            skip();
        } else if (any) {
            throw parse_error("expected '+' or '-' at offset " + std::to_string(i) + " in '" + text + "'");
        }
        std::size_t start = i;
        while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.' || text[i] == '/'))
            ++i;
        rational coef = 1;
        bool has_coef = i > start;
        if (has_coef)
            coef = parse_rational(text.substr(start, i - start));
        skip();
        int power = 0;
        if (i < text.size() && text[i] == '*') {
            if (!has_coef)
                throw parse_error("dangling '*' in '" + text + "'");
            ++i;
            skip();
            if (i >= text.size() || (text[i] != 'x' && text[i] != 't'))
                throw parse_error("expected variable after '*' in '" + text + "'");
        }
        if (i < text.size() && (text[i] == 'x' || text[i] == 't')) {
            ++i;
            power = 1;
            skip();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip();
                if (i >= text.size() || (text[i] != '1' && text[i] != '2'))
                    throw parse_error("only powers 1 and 2 are supported in '" + text + "'");
                power = text[i++] - '0';
            }
        } else if (!has_coef) {
            throw parse_error("expected a term at offset " + std::to_string(i) + " in '" + text + "'");
        }
        if (neg)
            coef = -coef;
        (power == 2 ? p.a : power == 1 ? p.b : p.c) += coef;
        any = true;
        skip();
    }
    if (!any)
        throw parse_error("empty polynomial");
    return p;
}

} // namespace sqspiral
