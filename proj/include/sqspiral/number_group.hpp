#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "primality.hpp"

namespace sqspiral {

enum class group_kind { divisible_by, squares, primes, fibonacci, explicit_list };

inline std::uint64_t isqrt(std::uint64_t n)
{
    constexpr std::uint64_t top = 0xFFFF'FFFFull; // largest root whose square fits
    auto r = std::min<std::uint64_t>(top, static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n))));
    while (r * r > n)
        --r;
    while (r < top && (r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

// 1, 2, 3, 5, 8, ... without the repeated 1.
inline std::vector<std::uint64_t> fibonacci_up_to(std::uint64_t max_n)
{
    std::vector<std::uint64_t> out;
    std::uint64_t a = 1, b = 2;
    while (a <= max_n) {
        out.push_back(a);
        const std::uint64_t c = a + b;
        a = b;
        b = c;
    }
    return out;
}

class number_group {
public:
    static number_group divisible_by(std::uint64_t p, std::uint64_t max_n)
    {
        if (p == 0)
            throw std::invalid_argument("divisible_by: divisor must be positive");
        number_group g(group_kind::divisible_by, max_n);
        g.p_ = p;
        return g;
    }
    static number_group squares(std::uint64_t max_n) { return number_group(group_kind::squares, max_n); }
    static number_group fibonacci(std::uint64_t max_n)
    {
        number_group g(group_kind::fibonacci, max_n);
        g.list_ = fibonacci_up_to(max_n);
        return g;
    }
    static number_group primes(std::uint64_t max_n)
    {
        number_group g(group_kind::primes, max_n);
        g.sieve_ = std::make_shared<const primality_table>(sieve(std::max<std::uint64_t>(max_n, 2)));
        return g;
    }
    static number_group explicit_list(std::vector<std::uint64_t> values, std::uint64_t max_n)
    {
        number_group g(group_kind::explicit_list, max_n);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        g.list_ = std::move(values);
        return g;
    }

    group_kind kind() const noexcept { return kind_; }
    std::uint64_t divisor() const noexcept { return p_; }
    std::uint64_t max_n() const noexcept { return max_n_; }
    const primality_table* primality() const noexcept { return sieve_.get(); }

    // Pure membership test on [1, max_n]; false outside.
    bool contains(std::uint64_t n) const
    {
        if (n < 1 || n > max_n_)
            return false;
        switch (kind_) {
        case group_kind::divisible_by: return n % p_ == 0;
        case group_kind::squares: {
            const auto r = isqrt(n);
            return r * r == n;
        }
        case group_kind::primes: return sieve_->is_prime(n);
        case group_kind::fibonacci:
        case group_kind::explicit_list: return std::binary_search(list_.begin(), list_.end(), n);
        }
        return false;
    }

    std::string spec() const
    {
        switch (kind_) {
        case group_kind::divisible_by: return "div:" + std::to_string(p_);
        case group_kind::squares: return "squares";
        case group_kind::primes: return "primes";
        case group_kind::fibonacci: return "fib";
        case group_kind::explicit_list: {
            std::string s = "list:";
            for (std::size_t i = 0; i < list_.size(); ++i)
                s += (i ? "," : "") + std::to_string(list_[i]);
            return s;
        }
        }
        return {};
    }

private:
    number_group(group_kind k, std::uint64_t max_n) : kind_(k), max_n_(max_n) {}

    group_kind kind_;
    std::uint64_t max_n_;
    std::uint64_t p_ = 0;
    std::vector<std::uint64_t> list_;
    std::shared_ptr<const primality_table> sieve_;
};

// Sorted members in [1, max_n] (clipped to the group's own bound).
inline std::vector<std::uint64_t> members(const number_group& g, std::uint64_t max_n)
{
    max_n = std::min(max_n, g.max_n());
    std::vector<std::uint64_t> out;
    switch (g.kind()) {
    case group_kind::divisible_by:
        for (std::uint64_t k = g.divisor(); k <= max_n; k += g.divisor())
            out.push_back(k);
        break;
    case group_kind::squares:
        for (std::uint64_t r = 1; r * r <= max_n; ++r)
            out.push_back(r * r);
        break;
    default:
        for (std::uint64_t n = 1; n <= max_n; ++n)
            if (g.contains(n))
                out.push_back(n);
    }
    return out;
}

// div:<p> | squares | primes | fib | list:<a,b,...>
inline number_group parse_group_spec(const std::string& spec, std::uint64_t max_n)
{
    auto number = [&](const std::string& s) -> std::uint64_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw parse_error("bad number '" + s + "' in group spec '" + spec + "'");
        try {
            return std::stoull(s);
        } catch (const std::out_of_range&) {
            throw parse_error("number out of range in group spec '" + spec + "'");
        }
    };
    if (spec.rfind("div:", 0) == 0) {
        const auto p = number(spec.substr(4));
        if (p == 0)
            throw parse_error("group spec 'div:0': divisor must be positive");
        return number_group::divisible_by(p, max_n);
    }
    if (spec == "squares")
        return number_group::squares(max_n);
    if (spec == "primes")
        return number_group::primes(max_n);
    if (spec == "fib")
        return number_group::fibonacci(max_n);
    if (spec.rfind("list:", 0) == 0) {
        std::vector<std::uint64_t> vals;
        std::stringstream ss(spec.substr(5));
        std::string item;
        while (std::getline(ss, item, ','))
            vals.push_back(number(item));
        if (vals.empty())
            throw parse_error("group spec 'list:' needs at least one value");
        for (auto v : vals)
            if (v == 0)
                throw parse_error("group spec list values must be positive");
        return number_group::explicit_list(std::move(vals), max_n);
    }
    throw parse_error("unknown group spec '" + spec + "' (expected div:<p>, squares, primes, fib, list:<a,b,...>)");
}

} // namespace sqspiral
