#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace sqspiral {

// Odd-only bitmap: bit i stands for 2i + 1.
class primality_table {
public:
    primality_table() = default;

    std::uint64_t max_n() const noexcept { return max_n_; }

    bool is_prime(std::uint64_t n) const
    {
        if (n > max_n_)
            throw std::out_of_range("primality_table: " + std::to_string(n) + " beyond sieve bound " +
                                    std::to_string(max_n_));
        if (n < 2)
            return false;
        if (n == 2)
            return true;
        if ((n & 1) == 0)
            return false;
        const std::uint64_t i = n >> 1;
        return (bits_[i >> 6] >> (i & 63)) & 1u;
    }

    std::uint64_t count_up_to(std::uint64_t n) const
    {
        std::uint64_t c = 0;
        for (std::uint64_t k = 2; k <= n; ++k)
            c += is_prime(k);
        return c;
    }

    std::vector<std::uint64_t> primes_up_to(std::uint64_t n) const
    {
        std::vector<std::uint64_t> out;
        for (std::uint64_t k = 2; k <= n; ++k)
            if (is_prime(k))
                out.push_back(k);
        return out;
    }

private:
    friend primality_table sieve(std::uint64_t, std::uint64_t);

    std::uint64_t max_n_ = 1;
    std::vector<std::uint64_t> bits_;
};

inline constexpr std::uint64_t default_sieve_budget = 4'000'000'000ULL;

inline primality_table sieve(std::uint64_t max_n, std::uint64_t budget = default_sieve_budget)
{
    if (max_n < 2)
        throw std::invalid_argument("sieve: max_n must be >= 2");
    if (max_n > budget)
        throw capacity_error("sieve: max_n " + std::to_string(max_n) + " exceeds the sieve budget of " +
                                 std::to_string(budget),
                             budget);
    primality_table t;
    t.max_n_ = max_n;
    const std::uint64_t slots = max_n / 2 + 1;
    t.bits_.assign((slots + 63) / 64, ~std::uint64_t{0});
    t.bits_[0] &= ~std::uint64_t{1}; // 1 is not prime
    for (std::uint64_t p = 3; p * p <= max_n; p += 2) {
        const std::uint64_t ip = p >> 1;
        if (!((t.bits_[ip >> 6] >> (ip & 63)) & 1u))
            continue;
        for (std::uint64_t q = p * p; q <= max_n; q += 2 * p) {
            const std::uint64_t iq = q >> 1;
            t.bits_[iq >> 6] &= ~(std::uint64_t{1} << (iq & 63));
        }
    }
    return t;
}

} // namespace sqspiral
