#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "spiral_core.hpp"

namespace sqspiral {

// Layout: "SQSP", version byte, u64 max_n, then max_n + 1 doubles, all
// little-endian.
inline constexpr std::array<char, 4> cache_magic{'S', 'Q', 'S', 'P'};
inline constexpr std::uint8_t cache_version = 0x01;

namespace detail {

inline void put_u64_le(std::ostream& os, std::uint64_t v)
{
    unsigned char b[8];
    for (int i = 0; i < 8; ++i)
        b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

inline std::uint64_t get_u64_le(const unsigned char* b)
{
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i)
        v = (v << 8) | b[i];
    return v;
}

} // namespace detail

inline void write_table_cache(const std::string& path, const spiral_table& table)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw io_error("cannot open " + path + " for writing");
    os.write(cache_magic.data(), cache_magic.size());
    os.put(static_cast<char>(cache_version));
    detail::put_u64_le(os, table.max_n());
    const auto& cum = table.cum_angle();
    if constexpr (std::endian::native == std::endian::little) {
        os.write(reinterpret_cast<const char*>(cum.data()), static_cast<std::streamsize>(cum.size() * sizeof(double)));
    } else {
        for (double v : cum)
            detail::put_u64_le(os, std::bit_cast<std::uint64_t>(v));
    }
    os.flush();
    if (!os)
        throw io_error("write failed on " + path);
}

inline spiral_table read_table_cache(const std::string& path, table_limits limits = {})
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw io_error("cannot open " + path);
    unsigned char head[13];
    if (!is.read(reinterpret_cast<char*>(head), sizeof head))
        throw io_error(path + ": truncated header");
    if (std::memcmp(head, cache_magic.data(), 4) != 0)
        throw io_error(path + ": not a table cache (bad magic)");
    if (head[4] != cache_version)
        throw io_error(path + ": unsupported cache version " + std::to_string(head[4]));
    const std::uint64_t max_n = detail::get_u64_le(head + 5);
    if (max_n < 1)
        throw io_error(path + ": empty table");
    if (max_n >= limits.max_entries)
        throw capacity_error(path + ": cached max_n " + std::to_string(max_n) + " exceeds the table budget",
                             limits.max_entries - 1);
    std::vector<double> cum(max_n + 1);
    if (!is.read(reinterpret_cast<char*>(cum.data()), static_cast<std::streamsize>(cum.size() * sizeof(double))))
        throw io_error(path + ": truncated body");
    if constexpr (std::endian::native != std::endian::little) {
        for (auto& v : cum) {
            unsigned char b[8];
            std::memcpy(b, &v, 8);
            v = std::bit_cast<double>(detail::get_u64_le(b));
        }
    }
    if (is.peek() != std::char_traits<char>::eof())
        throw io_error(path + ": trailing bytes after table body");
    return spiral_table(std::move(cum), summation::compensated);
}

} // namespace sqspiral
