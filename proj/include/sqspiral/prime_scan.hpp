#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "arm_tracer.hpp"
#include "format.hpp"
#include "number_group.hpp"
#include "primality.hpp"
#include "quad_poly.hpp"

namespace sqspiral {

namespace detail {

inline std::int64_t floor_mod(const rational& v, std::int64_t m)
{
    const std::int64_t r = v.num() % m;
    return r < 0 ? r + m : r;
}

} // namespace detail

// No value at any integer t is divisible by 2 or 3. An integer-valued
// quadratic is periodic with period 4 mod 2 and period 3 mod 3, so twelve
// consecutive arguments decide it.
inline bool coprime6_check(const quadratic_poly& p)
{
    if (!p.integer_valued())
        throw std::domain_error("coprime6_check: polynomial is not integer-valued: " + p.str());
    for (std::int64_t t = 0; t < 12; ++t) {
        const rational v = eval(p, t);
        if (detail::floor_mod(v, 2) == 0 || detail::floor_mod(v, 3) == 0)
            return false;
    }
    return true;
}

struct poly_density_row {
    quadratic_poly poly; // canonical
    std::int64_t T = 0;
    std::int64_t prime_count = 0;
    double density = 0;
    bool coprime6 = false;
};

inline std::int64_t count_prime_values(const quadratic_poly& p, std::int64_t T, const primality_table& pt)
{
    std::int64_t count = 0;
    for (std::int64_t t = 1; t <= T; ++t) {
        const rational v = eval(p, t);
        if (v.is_integer() && v.num() >= 2 && pt.is_prime(std::uint64_t(v.num())))
            ++count;
    }
    return count;
}

// Canonical b values for leading coefficient D/2 that keep the quadratic
// integer-valued: b = m - a for integers m with a <= m < 3a.
inline std::vector<rational> bhat_lattice(std::int64_t D)
{
    if (D < 1)
        throw std::invalid_argument("bhat_lattice: D must be positive");
    const rational a(D, 2);
    std::vector<rational> out;
    for (std::int64_t m = a.ceil(); rational(m) < 3 * a; ++m)
        out.push_back(rational(m) - a);
    return out;
}

// Every canonical quadratic with second difference D and c in [c_lo, c_hi],
// scored by the share of primes among its values at t = 1..T. Sorted by
// density, then by (a, b, c).
inline std::vector<poly_density_row> scan_prime_polys(std::int64_t D, std::int64_t c_lo, std::int64_t c_hi,
                                                      std::int64_t T)
{
    if (T < 1)
        throw std::invalid_argument("scan_prime_polys: T must be positive");
    if (c_lo > c_hi)
        throw std::invalid_argument("scan_prime_polys: empty c range");
    const rational a(D, 2);
    const auto bs = bhat_lattice(D);
    const rational top = (a * rational(T) + bs.back()) * rational(T) + rational(std::max<std::int64_t>(c_hi, 0));
    const auto pt = sieve(std::max<std::uint64_t>(2, std::uint64_t(top.ceil())));

    std::vector<poly_density_row> rows;
    rows.reserve(bs.size() * std::size_t(c_hi - c_lo + 1));
    for (const auto& b : bs) {
        for (std::int64_t c = c_lo; c <= c_hi; ++c) {
            poly_density_row r;
            r.poly = {a, b, rational(c)};
            r.T = T;
            r.prime_count = count_prime_values(r.poly, T, pt);
            r.density = double(r.prime_count) / double(T);
            r.coprime6 = coprime6_check(r.poly);
            rows.push_back(r);
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
        if (x.prime_count != y.prime_count)
            return x.prime_count > y.prime_count;
        return x.poly < y.poly;
    });
    return rows;
}

inline std::string prime_scan_csv(const std::vector<poly_density_row>& rows)
{
    std::ostringstream os;
    os << "a,b_hat,c,T,prime_count,density,coprime6\n";
    for (const auto& r : rows)
        os << r.poly.a << ',' << r.poly.b << ',' << r.poly.c << ',' << r.T << ',' << r.prime_count << ','
           << format_fixed(r.density, 6) << ',' << (r.coprime6 ? "true" : "false") << '\n';
    return os.str();
}

// Expected share of primes among the arm's values if they were random
// integers of the same size: mean of 1/ln(v).
inline double pnt_baseline(const std::vector<std::uint64_t>& values)
{
    double s = 0;
    std::size_t k = 0;
    for (auto v : values) {
        if (v < 3)
            continue;
        s += 1.0 / std::log(double(v));
        ++k;
    }
    return k ? s / double(k) : 0.0;
}

struct prime_arm {
    arm trace;
    double density = 0;
    double baseline = 0;
    bool coprime6 = false;
    bool any_value_div_2_or_3 = false;
};

struct prime_arm_summary {
    std::uint64_t max_n = 0;
    double min_density = 0;
    std::int64_t D_filter = 0; // 0 keeps every D
    std::size_t traced = 0;   // arms before the D filter
    std::vector<prime_arm> arms;
    // canonical b -> sorted c values of the reported arms; the gaps show how
    // arms pair up within one system.
    std::map<rational, std::vector<rational>> c_by_bhat;
};

template <typename Real>
prime_arm_summary prime_arm_report(const basic_spiral_table<Real>& table, std::uint64_t max_n,
                                   double min_density = 0.6, std::int64_t D_filter = 18, trace_params tp = {})
{
    const auto g = number_group::primes(max_n);
    tp.min_density = min_density;
    auto arms = enumerate_arms(table, g, tp);
    prime_arm_summary s;
    s.max_n = max_n;
    s.min_density = min_density;
    s.D_filter = D_filter;
    s.traced = arms.size();
    for (auto& a : arms) {
        if (D_filter && a.second_differential() != D_filter)
            continue;
        prime_arm pa;
        pa.density = a.density();
        pa.baseline = pnt_baseline(a.members);
        pa.coprime6 = coprime6_check(a.poly);
        pa.any_value_div_2_or_3 =
            std::any_of(a.members.begin(), a.members.end(), [](auto v) { return v % 2 == 0 || v % 3 == 0; });
        s.c_by_bhat[a.poly.b].push_back(a.poly.c);
        pa.trace = std::move(a);
        s.arms.push_back(std::move(pa));
    }
    for (auto& [b, cs] : s.c_by_bhat)
        std::sort(cs.begin(), cs.end());
    return s;
}

} // namespace sqspiral
