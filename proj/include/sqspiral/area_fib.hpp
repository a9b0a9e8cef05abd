#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "compensated.hpp"
#include "format.hpp"
#include "number_group.hpp"
#include "quad_poly.hpp"
#include "spiral_core.hpp"

namespace sqspiral {

inline constexpr double golden_ratio = std::numbers::phi;

struct analysis_series {
    std::string label;
    std::vector<std::pair<std::int64_t, double>> terms; // strictly increasing index
    std::optional<double> claimed_limit;
    std::string limit_label;

    bool empty() const noexcept { return terms.empty(); }
    double last() const { return terms.back().second; }
    std::optional<double> at(std::int64_t index) const
    {
        for (const auto& [i, v] : terms)
            if (i == index)
                return v;
        return std::nullopt;
    }
};

// "index,value" with 12 fractional digits.
inline std::string series_csv(const analysis_series& s)
{
    std::string out = "index,value\n";
    for (const auto& [i, v] : s.terms)
        out += std::to_string(i) + "," + format_fixed(v, 12) + "\n";
    return out;
}

inline double triangle_area(std::uint64_t n)
{
    if (n < 1)
        throw std::domain_error("triangle_area: n must be >= 1");
    return 0.5 * std::sqrt(static_cast<double>(n));
}

// Area of the triangles on rays M^2 .. M^2 + 2M.
inline double square_band_area(std::uint64_t M)
{
    compensated_sum<double> s;
    for (std::uint64_t n = M * M; n <= M * M + 2 * M; ++n)
        s += triangle_area(n);
    return s.value();
}

inline double band_ratio_closed_form(double M) { return (3 * M * M + 9 * M + 7) / (3 * M * M + 3 * M + 1); }

inline analysis_series square_band_ratio_series(std::int64_t M_max)
{
    if (M_max < 2)
        throw std::invalid_argument("square_band_ratio_series: M_max must be >= 2");
    analysis_series s{"square band area ratio S(M+1)/S(M)", {}, 1.0, "1"};
    double prev = square_band_area(1);
    for (std::int64_t M = 1; M <= M_max; ++M) {
        const double next = square_band_area(std::uint64_t(M + 1));
        s.terms.emplace_back(M, next / prev);
        prev = next;
    }
    return s;
}

namespace detail {

template <typename Real>
void require_ray(const basic_spiral_table<Real>& t, std::uint64_t n, const char* who)
{
    if (n > t.max_ray())
        throw std::out_of_range(std::string(who) + ": needs ray " + std::to_string(n) + " but the table ends at " +
                                std::to_string(t.max_ray()));
}

} // namespace detail

// Angle between the rays of k^2 and (k+1)^2, radians; tends to 2.
template <typename Real>
analysis_series square_angle_series(const basic_spiral_table<Real>& table, std::int64_t k_max)
{
    detail::require_ray(table, std::uint64_t((k_max + 1) * (k_max + 1)), "square_angle_series");
    analysis_series s{"angle between rays k^2 and (k+1)^2 [rad]", {}, 2.0, "2"};
    for (std::int64_t k = 1; k <= k_max; ++k) {
        const auto a = std::uint64_t(k * k), b = std::uint64_t((k + 1) * (k + 1));
        s.terms.emplace_back(k, double(table.angle_of(b) - table.angle_of(a)));
    }
    return s;
}

// Smallest angle between the rays of r^2 and (r+step)^2, degrees. These are
// neighbours on one square arm; the limit is |2 step mod 2pi| in degrees.
template <typename Real>
analysis_series same_arm_angle_series(const basic_spiral_table<Real>& table, std::int64_t r_max,
                                      std::int64_t step = 3)
{
    if (step < 1)
        throw std::invalid_argument("same_arm_angle_series: step must be positive");
    detail::require_ray(table, std::uint64_t((r_max + step) * (r_max + step)), "same_arm_angle_series");
    const double limit = std::abs(reduce_signed(2.0 * double(step))) * 180.0 / std::numbers::pi;
    analysis_series s{"angle between rays r^2 and (r+" + std::to_string(step) + ")^2 [deg]", {}, limit,
                      "|2*" + std::to_string(step) + " mod 2pi|"};
    for (std::int64_t r = 1; r <= r_max; ++r) {
        const auto a = std::uint64_t(r * r), b = std::uint64_t((r + step) * (r + step));
        const double d = double(table.angle_of(b) - table.angle_of(a));
        s.terms.emplace_back(r, std::abs(reduce_signed(d)) * 180.0 / std::numbers::pi);
    }
    return s;
}

// Segment k runs over rays F_k .. F_{k+1} - 1 with F = 1, 2, 3, 5, 8, ...
struct fib_segments {
    std::vector<std::uint64_t> F;  // F_1 .. F_{count+1}
    std::vector<double> angle;     // alpha_k, radians
    std::vector<double> area;      // B_k = sum of sqrt(n)/2
};

// Streams the sums without a table, so counts past the table budget work.
inline fib_segments fib_segment_sums(std::size_t count)
{
    if (count < 1)
        throw std::invalid_argument("fib_segment_sums: count must be >= 1");
    fib_segments s;
    std::uint64_t a = 1, b = 2;
    s.F.push_back(a);
    for (std::size_t k = 0; k < count; ++k) {
        compensated_sum<double> ang, area;
        for (std::uint64_t n = a; n < b; ++n) {
            const double r = std::sqrt(static_cast<double>(n));
            ang += std::atan(1.0 / r);
            area += 0.5 * r;
        }
        s.angle.push_back(ang.value());
        s.area.push_back(area.value());
        s.F.push_back(b);
        const std::uint64_t c = a + b;
        a = b;
        b = c;
    }
    return s;
}

// Same angles read off a table.
template <typename Real>
std::vector<double> fib_angles(const basic_spiral_table<Real>& table, std::size_t count)
{
    const auto F = fibonacci_up_to(~std::uint64_t{0} >> 2);
    if (count + 1 > F.size())
        throw std::out_of_range("fib_angles: count too large");
    detail::require_ray(table, F[count], "fib_angle_series");
    std::vector<double> out;
    for (std::size_t k = 0; k < count; ++k)
        out.push_back(double(table.angle_of(F[k + 1]) - table.angle_of(F[k])));
    return out;
}

struct fib_angle_report {
    analysis_series angles;     // alpha_k in degrees
    analysis_series ratio;      // alpha_{k+1} / alpha_k
    analysis_series cumulative; // (alpha_1 + .. + alpha_{k+1}) / (alpha_1 + .. + alpha_k)
};

inline fib_angle_report fib_angle_series_from(const std::vector<double>& alpha)
{
    const double sqrt_tau = std::sqrt(golden_ratio);
    fib_angle_report r;
    r.angles = {"fibonacci segment angle alpha_k [deg]", {}, std::nullopt, ""};
    r.ratio = {"alpha_{k+1}/alpha_k", {}, sqrt_tau, "sqrt(tau)"};
    r.cumulative = {"cumulative angle ratio", {}, sqrt_tau, "sqrt(tau)"};
    compensated_sum<double> cum;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        r.angles.terms.emplace_back(std::int64_t(k + 1), alpha[k] * 180.0 / std::numbers::pi);
        const double before = cum.value();
        cum += alpha[k];
        if (k > 0) {
            r.ratio.terms.emplace_back(std::int64_t(k), alpha[k] / alpha[k - 1]);
            r.cumulative.terms.emplace_back(std::int64_t(k), cum.value() / before);
        }
    }
    return r;
}

template <typename Real>
fib_angle_report fib_angle_series(const basic_spiral_table<Real>& table, std::size_t count)
{
    return fib_angle_series_from(fib_angles(table, count));
}

inline analysis_series fib_area_ratio_series_from(const std::vector<double>& B)
{
    analysis_series s{"B_{k+1}/B_k", {}, golden_ratio * std::sqrt(golden_ratio), "tau*sqrt(tau)"};
    for (std::size_t k = 1; k < B.size(); ++k)
        s.terms.emplace_back(std::int64_t(k), B[k] / B[k - 1]);
    return s;
}

inline analysis_series fib_area_ratio_series(std::size_t count)
{
    if (count < 2)
        throw std::invalid_argument("fib_area_ratio_series: count must be >= 2");
    return fib_area_ratio_series_from(fib_segment_sums(count).area);
}

struct crossing_report {
    std::vector<std::uint64_t> crossings; // index w - 1 holds winding w
    quadratic_poly fitted;                // through crossings 1, 2, 3
    std::vector<std::int64_t> second_differences;
};

// The ray nearest to the reference axis at the start of each turn. The first
// entry is fixed at 2 rather than 1 so the fit anchors at f(1) = 2.
template <typename Real>
crossing_report axis_crossings(const basic_spiral_table<Real>& table, std::int64_t winding_max)
{
    if (winding_max < 3)
        throw std::invalid_argument("axis_crossings: need at least 3 windings");
    const Real end = static_cast<Real>(two_pi) * static_cast<Real>(winding_max - 1) + std::numbers::pi_v<Real> / 2;
    if (table.angle_of(table.max_ray()) < end)
        throw capacity_error("axis_crossings: table covers fewer than " + std::to_string(winding_max) + " windings",
                             table.max_n());
    crossing_report r;
    r.crossings.push_back(2);
    for (std::int64_t w = 2; w <= winding_max; ++w) {
        const Real target = static_cast<Real>(two_pi) * static_cast<Real>(w - 1);
        std::uint64_t n = table.first_ray_at_or_after(target);
        if (n > 1 && std::abs(table.angle_of(n - 1) - target) <= std::abs(table.angle_of(n) - target))
            --n;
        r.crossings.push_back(n);
    }
    r.fitted = newton_quadratic(std::int64_t(r.crossings[0]), std::int64_t(r.crossings[1]),
                                std::int64_t(r.crossings[2]));
    std::vector<std::int64_t> seq(r.crossings.begin(), r.crossings.end());
    r.second_differences = make_difference_table(seq).level2;
    return r;
}

} // namespace sqspiral
