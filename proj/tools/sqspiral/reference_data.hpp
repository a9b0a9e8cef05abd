#pragma once

// Published numbers that the verification suites compare against, plus
// parsers for the two tabular data files under data/.

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <sqspiral/errors.hpp>
#include <sqspiral/quad_poly.hpp>
#include <sqspiral/rational.hpp>

namespace sqspiral::ref {

inline constexpr double c2 = -2.157782996659;
inline constexpr double archimedean_offset = 1.078891498;

struct distance_pair {
    std::uint64_t n, m;
    double distance;
};

// Successive-turn ray pairs and their printed length differences.
inline const std::vector<distance_pair> winding_pairs = {
    {2, 21, 3.16836},    {3, 24, 3.16693},    {5, 29, 3.14910},    {9, 38, 3.16441},    {10, 40, 3.16228},
    {11, 42, 3.16412},   {16, 51, 3.14143},   {17, 53, 3.15700},   {20, 58, 3.14364},   {23, 63, 3.14142},
    {26, 68, 3.14719},   {31, 76, 3.15003},   {33, 79, 3.14363},   {35, 82, 3.13931},   {45, 97, 3.14065},
    {47, 100, 3.14435},  {49, 103, 3.14889},  {56, 113, 3.14683},  {66, 127, 3.14539},  {74, 138, 3.14501},
    {77, 142, 3.14141},  {101, 174, 3.14103}, {104, 178, 3.14363}, {107, 182, 3.14666}, {114, 191, 3.14320},
    {121, 200, 3.14213}, {128, 209, 3.14312}, {139, 223, 3.14336}, {143, 228, 3.14141}, {171, 263, 3.14058},
    {175, 268, 3.14195}, {179, 273, 3.14362}, {188, 284, 3.14099}, {192, 289, 3.14359},
};

// Winding number -> printed mean distance.
inline const std::vector<std::pair<std::int64_t, double>> winding_means = {
    {2, 3.1592037}, {3, 3.1443455}, {4, 3.14428}, {5, 3.142395}};

// The probe table spans rays up to about 300.
inline constexpr std::uint64_t winding_table_range = 300;

// M -> S(M+1)/S(M).
inline const std::vector<std::pair<std::int64_t, double>> band_ratios = {
    {1, 2.932696777}, {2, 1.987148057}, {3, 1.662221486}, {50, 1.039998693}, {51, 1.039214454}};

// Angles of the square arm 9x^2 - 12x + 4 to the reference axis, for rays
// 49, 100, 169, 256.
inline const std::array<double, 4> square_arm_axis_angles = {40.12815644, 56.75743814, 73.20458755, 89.56818432};

// Degrees between consecutive Fibonacci rays.
inline const std::array<double, 6> fib_angles_deg = {45.0, 35.26, 56.57, 67.01, 88.34, 111.40};
inline constexpr double fib_ratio_lo = 1.272242;
inline constexpr double fib_ratio_hi = 1.272507;
inline const std::array<double, 5> fib_area_ratios = {1.41421, 2.63896, 1.96442, 2.15124, 2.05542};
// Largest ray in the hand-measured drawings.
inline constexpr std::uint64_t fib_measured_rays = 300;

// Winding -> printed ray nearest the reference axis.
inline const std::vector<std::pair<std::int64_t, std::uint64_t>> axis_crossings = {
    {1, 2}, {2, 18}, {3, 154}, {4, 110}, {5, 186}, {6, 282}};

struct system_count {
    std::uint64_t p;
    char dir; // 'N' or 'P'
    std::int64_t count;
    std::int64_t D;
};

// One entry per direction for the rows printed as "N or P".
inline const std::vector<system_count> system_counts = {
    {2, 'N', 10, 20}, {2, 'P', 9, 18}, {3, 'N', 7, 21}, {3, 'P', 6, 18}, {5, 'N', 4, 20},  {5, 'P', 4, 20},
    {7, 'N', 3, 21},  {7, 'P', 3, 21}, {11, 'N', 2, 22}, {11, 'P', 2, 22}, {13, 'N', 2, 26}, {13, 'P', 1, 13},
    {17, 'N', 1, 17}, {17, 'P', 1, 17}, {19, 'N', 1, 19}, {19, 'P', 1, 19},
};

// Printed row labels; rows with equal N and P counts appear once.
struct rule_row {
    std::uint64_t p;
    std::string label; // "N", "P" or "N or P"
};
inline const std::vector<rule_row> rule_rows = {
    {2, "N"}, {2, "P"}, {3, "N"}, {3, "P"}, {5, "N or P"}, {7, "N or P"}, {11, "N or P"},
    {13, "N"}, {13, "P"}, {17, "N or P"}, {19, "N or P"},
};

struct prime_poly {
    std::string name;
    quadratic_poly poly;
    std::int64_t D;
};
inline const std::vector<prime_poly> prime_polys = {
    {"B3", {9, 27, 17}, 18},
    {"K5", {11, 25, 13}, 22},
};

struct arm_sequence {
    std::string group;  // group spec, e.g. "div:7"
    std::string system; // e.g. "N1"
    std::vector<std::int64_t> members;
};

struct poly_row {
    arm_sequence seq;
    std::array<std::optional<quadratic_poly>, 4> f; // f_j fits members j..j+2
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(item);
    return out;
}

inline std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

inline arm_sequence parse_head(const std::string& head, const std::string& body)
{
    arm_sequence a;
    std::istringstream hs(head);
    hs >> a.group >> a.system;
    std::istringstream bs(body);
    std::int64_t v;
    while (bs >> v)
        a.members.push_back(v);
    if (a.group.empty() || a.system.empty() || a.members.empty())
        throw parse_error("bad arm row: " + head + " | " + body);
    return a;
}

} // namespace detail

inline std::vector<arm_sequence> parse_arm_sequences(const std::string& text)
{
    std::vector<arm_sequence> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        line = detail::trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        const auto cells = detail::split(line, '|');
        if (cells.size() != 2)
            throw parse_error("arm sequence row needs 2 cells: " + line);
        out.push_back(detail::parse_head(cells[0], cells[1]));
    }
    return out;
}

inline std::vector<poly_row> parse_polynomial_tables(const std::string& text)
{
    std::vector<poly_row> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        line = detail::trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        const auto cells = detail::split(line, '|');
        if (cells.size() != 6)
            throw parse_error("polynomial row needs 6 cells: " + line);
        poly_row r;
        r.seq = detail::parse_head(cells[0], cells[1]);
        for (std::size_t j = 0; j < 4; ++j) {
            const auto cell = detail::trim(cells[j + 2]);
            if (cell == "-")
                continue;
            std::istringstream cs(cell);
            std::string a, b, c;
            if (!(cs >> a >> b >> c))
                throw parse_error("polynomial cell needs 3 coefficients: " + cell);
            r.f[j] = quadratic_poly{parse_rational(a), parse_rational(b), parse_rational(c)};
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace sqspiral::ref
