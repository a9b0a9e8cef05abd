#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sqspiral/errors.hpp>

namespace sqspiral::cli {

enum class output_format { csv, json };

struct config {
    std::string cache_path = "sqspiral.cache";
    std::uint64_t max_n = 1'000'000;
    output_format format = output_format::csv;
    double seed_bound_fraction = 0.25;
    double prime_density = 0.6;
    bool mirror = false;
    std::uint64_t table_budget = 200'000'000;
};

inline std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

inline output_format parse_format(const std::string& v)
{
    if (v == "csv")
        return output_format::csv;
    if (v == "json")
        return output_format::json;
    throw parse_error("format must be csv or json, got '" + v + "'");
}

// key=value, '#' comments. Unknown keys and non-positive numbers are errors.
inline config parse_config(const std::string& text, config c = {})
{
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw parse_error("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        auto where = [&] { return "config line " + std::to_string(lineno) + " (" + key + "): "; };
        auto positive_real = [&] {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(val, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != val.size() || !(v > 0))
                throw parse_error(where() + "needs a positive number, got '" + val + "'");
            return v;
        };
        auto positive_int = [&] {
            if (val.empty() || val.find_first_not_of("0123456789") != std::string::npos)
                throw parse_error(where() + "needs a positive integer, got '" + val + "'");
            const auto v = std::stoull(val);
            if (v == 0)
                throw parse_error(where() + "must be positive");
            return static_cast<std::uint64_t>(v);
        };
        if (key == "cache") {
            if (val.empty())
                throw parse_error(where() + "empty path");
            c.cache_path = val;
        } else if (key == "max_n") {
            c.max_n = positive_int();
        } else if (key == "format") {
            c.format = parse_format(val);
        } else if (key == "seed_bound_fraction") {
            c.seed_bound_fraction = positive_real();
        } else if (key == "prime_density") {
            c.prime_density = positive_real();
            if (c.prime_density > 1)
                throw parse_error(where() + "must be at most 1");
        } else if (key == "mirror") {
            if (val != "true" && val != "false")
                throw parse_error(where() + "must be true or false");
            c.mirror = val == "true";
        } else if (key == "table_budget") {
            c.table_budget = positive_int();
        } else {
            throw parse_error("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    return c;
}

// Defaults, then the config file (if present), then SQSPIRAL_CACHE.
// Command-line flags are applied by the caller afterwards.
inline config load_config(const std::string& path, bool required)
{
    config c;
    std::ifstream is(path);
    if (is) {
        std::stringstream ss;
        ss << is.rdbuf();
        c = parse_config(ss.str(), c);
    } else if (required) {
        throw io_error("cannot read config file " + path);
    }
    if (const char* env = std::getenv("SQSPIRAL_CACHE"); env && *env)
        c.cache_path = env;
    return c;
}

} // namespace sqspiral::cli
