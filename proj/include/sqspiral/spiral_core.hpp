#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "compensated.hpp"
#include "errors.hpp"

namespace sqspiral {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

enum class summation { plain, compensated };

inline const char* to_string(summation s) { return s == summation::plain ? "plain" : "compensated"; }

// Angle of the n-th right triangle at the centre: the leg of length 1 faces it,
// the leg of length sqrt(n) is adjacent.
template <typename Real = double>
Real segment_angle(std::uint64_t n)
{
    if (n == 0)
        throw std::domain_error("segment_angle: triangle index starts at 1");
    return std::atan(Real(1) / std::sqrt(static_cast<Real>(n)));
}

// Reduce into (-pi, pi].
template <typename Real>
Real reduce_signed(Real x)
{
    const Real tp = static_cast<Real>(two_pi);
    x = std::fmod(x, tp);
    if (x > std::numbers::pi_v<Real>)
        x -= tp;
    else if (x <= -std::numbers::pi_v<Real>)
        x += tp;
    return x;
}

// Reduce into [0, 2pi).
template <typename Real>
Real reduce_positive(Real x)
{
    const Real tp = static_cast<Real>(two_pi);
    x = std::fmod(x, tp);
    if (x < 0)
        x += tp;
    if (x >= tp)
        x = 0;
    return x;
}

template <typename Real>
struct basic_ray {
    std::uint64_t n = 0;
    Real radius = 0;
    Real angle_total = 0;
    Real angle_mod = 0;
    std::int64_t winding = 0;
    Real x = 0;
    Real y = 0;
};

struct table_limits {
    // Entries of cum_angle, i.e. max_n + 1. Default is 1.6 GB of doubles.
    std::size_t max_entries = 200'000'000;
};

template <typename Real>
std::int64_t winding_of(Real angle_total)
{
    return 1 + static_cast<std::int64_t>(std::floor(angle_total / static_cast<Real>(two_pi)));
}

template <typename Real = double>
class basic_spiral_table {
public:
    using real_type = Real;
    using ray_type = basic_ray<Real>;

    basic_spiral_table() = default;

    // Adopts an existing cumulative array (cache loading). cum[0] must be 0.
    basic_spiral_table(std::vector<Real> cum, summation mode) : cum_(std::move(cum)), mode_(mode)
    {
        if (cum_.size() < 2 || cum_[0] != Real(0))
            throw std::invalid_argument("spiral table needs w(0) = 0 and at least one segment");
    }

    std::uint64_t max_n() const noexcept { return cum_.size() - 1; }
    summation built_with() const noexcept { return mode_; }
    const std::vector<Real>& cum_angle() const noexcept { return cum_; }

    // w(k) for 0 <= k <= max_n.
    Real w(std::uint64_t k) const
    {
        if (k >= cum_.size())
            throw std::out_of_range("w(" + std::to_string(k) + ") beyond table max_n " + std::to_string(max_n()));
        return cum_[k];
    }

    // Ray of length sqrt(n) sits at w(n-1); valid for 1 <= n <= max_n + 1.
    Real angle_of(std::uint64_t n) const
    {
        if (n == 0)
            throw std::domain_error("angle_of: ray index starts at 1");
        return w(n - 1);
    }

    std::uint64_t max_ray() const noexcept { return cum_.size(); }

    ray_type ray(std::uint64_t n) const
    {
        ray_type r;
        r.n = n;
        r.radius = std::sqrt(static_cast<Real>(n));
        r.angle_total = angle_of(n);
        r.angle_mod = reduce_positive(r.angle_total);
        r.winding = winding_of(r.angle_total);
        r.x = r.radius * std::cos(r.angle_total);
        r.y = r.radius * std::sin(r.angle_total);
        return r;
    }

    std::int64_t winding(std::uint64_t n) const { return winding_of(angle_of(n)); }

    // Smallest ray index whose angle is >= phi, or max_ray() + 1 if none.
    std::uint64_t first_ray_at_or_after(Real phi) const
    {
        auto it = std::lower_bound(cum_.begin(), cum_.end(), phi);
        return static_cast<std::uint64_t>(it - cum_.begin()) + 1;
    }

    bool operator==(const basic_spiral_table& o) const { return cum_ == o.cum_; }

private:
    std::vector<Real> cum_{Real(0)};
    summation mode_ = summation::compensated;
};

using spiral_table = basic_spiral_table<double>;
using ray_coord = basic_ray<double>;

template <typename Real = double>
basic_spiral_table<Real> build_table(std::uint64_t max_n, summation mode = summation::compensated,
                                     table_limits limits = {})
{
    if (max_n < 1)
        throw std::invalid_argument("build_table: max_n must be >= 1");
    if (max_n >= limits.max_entries)
        throw capacity_error("build_table: max_n " + std::to_string(max_n) + " exceeds the table budget of " +
                                 std::to_string(limits.max_entries - 1) + " segments",
                             limits.max_entries - 1);
    std::vector<Real> cum;
    cum.reserve(max_n + 1);
    cum.push_back(Real(0));
    if (mode == summation::compensated) {
        compensated_sum<Real> acc;
        for (std::uint64_t n = 1; n <= max_n; ++n) {
            acc += segment_angle<Real>(n);
            cum.push_back(acc.value());
        }
    } else {
        Real acc = 0;
        for (std::uint64_t n = 1; n <= max_n; ++n) {
            acc += segment_angle<Real>(n);
            cum.push_back(acc);
        }
    }
    return basic_spiral_table<Real>(std::move(cum), mode);
}

// w(k) - 2 sqrt(k); tends to the spiral constant from above.
template <typename Real>
Real c2_estimate(const basic_spiral_table<Real>& table, std::uint64_t k)
{
    if (k < 1 || k > table.max_n())
        throw std::out_of_range("c2_estimate: k=" + std::to_string(k) + " outside [1, " +
                                std::to_string(table.max_n()) + "]");
    return table.w(k) - 2 * std::sqrt(static_cast<Real>(k));
}

namespace detail {

// Least squares for a small dense system via Householder QR. A is rows x cols,
// row-major. Returns the coefficient vector.
template <typename Real>
std::vector<Real> least_squares(std::vector<Real> A, std::vector<Real> y, std::size_t rows, std::size_t cols)
{
    for (std::size_t j = 0; j < cols; ++j) {
        Real norm = 0;
        for (std::size_t i = j; i < rows; ++i)
            norm += A[i * cols + j] * A[i * cols + j];
        norm = std::sqrt(norm);
        if (norm == 0)
            throw std::domain_error("least_squares: rank deficient design");
        const Real alpha = A[j * cols + j] > 0 ? -norm : norm;
        std::vector<Real> v(rows, Real(0));
        for (std::size_t i = j; i < rows; ++i)
            v[i] = A[i * cols + j];
        v[j] -= alpha;
        Real vv = 0;
        for (std::size_t i = j; i < rows; ++i)
            vv += v[i] * v[i];
        if (vv == 0)
            continue;
        for (std::size_t k = j; k < cols; ++k) {
            Real d = 0;
            for (std::size_t i = j; i < rows; ++i)
                d += v[i] * A[i * cols + k];
            d = 2 * d / vv;
            for (std::size_t i = j; i < rows; ++i)
                A[i * cols + k] -= d * v[i];
        }
        Real d = 0;
        for (std::size_t i = j; i < rows; ++i)
            d += v[i] * y[i];
        d = 2 * d / vv;
        for (std::size_t i = j; i < rows; ++i)
            y[i] -= d * v[i];
    }
    std::vector<Real> x(cols, Real(0));
    for (std::size_t jj = cols; jj-- > 0;) {
        Real s = y[jj];
        for (std::size_t k = jj + 1; k < cols; ++k)
            s -= A[jj * cols + k] * x[k];
        x[jj] = s / A[jj * cols + jj];
    }
    return x;
}

} // namespace detail

// Fit c2(k) = c2 + alpha u + beta u^2 + gamma u^3 with u = k^(-1/2) and return
// the intercept. Four samples interpolate; more are fitted in least squares.
template <typename Real>
Real c2_extrapolate_values(const std::vector<std::uint64_t>& ks, const std::vector<Real>& values)
{
    if (ks.size() != values.size())
        throw std::invalid_argument("c2_extrapolate: sample and value counts differ");
    if (ks.size() < 4)
        throw std::invalid_argument("c2_extrapolate: need at least 4 sample points, got " +
                                    std::to_string(ks.size()));
    for (std::size_t i = 1; i < ks.size(); ++i) {
        if (ks[i - 1] == 0 || static_cast<Real>(ks[i]) < 2 * static_cast<Real>(ks[i - 1]))
            throw std::invalid_argument("c2_extrapolate: consecutive sample ratio below 2 at k=" +
                                        std::to_string(ks[i]));
    }
    // A series that has already converged carries no slope to fit.
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*hi - *lo <= 4 * std::numeric_limits<Real>::epsilon() * std::abs(*hi))
        return values.back();

    constexpr std::size_t cols = 4;
    const std::size_t rows = ks.size();
    std::vector<Real> A(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Real u = 1 / std::sqrt(static_cast<Real>(ks[i]));
        Real p = 1;
        for (std::size_t j = 0; j < cols; ++j) {
            A[i * cols + j] = p;
            p *= u;
        }
    }
    return detail::least_squares(std::move(A), values, rows, cols)[0];
}

template <typename Real>
Real c2_extrapolate(const basic_spiral_table<Real>& table, const std::vector<std::uint64_t>& ks)
{
    std::vector<Real> values;
    values.reserve(ks.size());
    for (auto k : ks)
        values.push_back(c2_estimate(table, k));
    return c2_extrapolate_values(ks, values);
}

// Radius predicted by the Archimedean approximation r = phi/2 - c2/2.
inline double archimedean_radius(double phi, double c2)
{
    if (phi < 0)
        throw std::domain_error("archimedean_radius: phi must be non-negative");
    return 0.5 * phi - 0.5 * c2;
}

// sqrt(n+1) - sqrt(n) without cancellation.
inline double radial_gap(double n) { return 1.0 / (std::sqrt(n + 1.0) + std::sqrt(n)); }

struct winding_row {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    double distance = 0;
    std::int64_t winding = 0; // averaging group, see merge rule below
    double winding_avg = 0;
};

struct winding_table {
    std::vector<winding_row> rows;
    std::vector<std::uint64_t> skipped; // probes without a partner one turn out
    std::map<std::int64_t, double> averages;
};

// Partner one full turn further out: argmin over m of |angle(m) - angle(n) - 2pi|.
// Returns 0 if the table does not reach half a turn beyond the target.
template <typename Real>
std::uint64_t next_winding_partner(const basic_spiral_table<Real>& table, std::uint64_t n)
{
    const Real target = table.angle_of(n) + static_cast<Real>(two_pi);
    if (target + std::numbers::pi_v<Real> / 2 > table.angle_of(table.max_ray()))
        return 0;
    std::uint64_t m = table.first_ray_at_or_after(target);
    if (m > 1 && std::abs(table.angle_of(m - 1) - target) <= std::abs(table.angle_of(m) - target))
        --m;
    return m;
}

namespace detail {

template <typename Real>
winding_table finish_winding_table(const basic_spiral_table<Real>& table, std::vector<winding_row> rows,
                                   std::vector<std::uint64_t> skipped, std::int64_t last_complete)
{
    std::map<std::int64_t, std::pair<compensated_sum<double>, std::size_t>> acc;
    for (auto& r : rows) {
        r.winding = std::min(table.winding(r.m), last_complete);
        auto& slot = acc[r.winding];
        slot.first += r.distance;
        ++slot.second;
    }
    winding_table out;
    for (auto& [w, s] : acc)
        out.averages[w] = s.first.value() / static_cast<double>(s.second);
    for (auto& r : rows)
        r.winding_avg = out.averages[r.winding];
    out.rows = std::move(rows);
    out.skipped = std::move(skipped);
    return out;
}

} // namespace detail

// Winding distances for an explicit probe list. Rows are grouped by the winding
// of m. A winding is complete when the ray range_max lies beyond its end; rows
// whose m falls in a later, incomplete winding are averaged with the last
// complete one.
template <typename Real>
winding_table winding_distance_table(const basic_spiral_table<Real>& table, const std::vector<std::uint64_t>& probes,
                                     std::uint64_t range_max)
{
    if (range_max < 1 || range_max > table.max_ray())
        throw std::out_of_range("winding_distance_table: range_max outside the table");
    std::vector<winding_row> rows;
    std::vector<std::uint64_t> skipped;
    for (auto n : probes) {
        const std::uint64_t m = next_winding_partner(table, n);
        if (m == 0) {
            skipped.push_back(n);
            continue;
        }
        rows.push_back({n, m, std::sqrt(double(m)) - std::sqrt(double(n)), 0, 0});
    }
    const std::int64_t last_complete =
        static_cast<std::int64_t>(std::floor(table.angle_of(range_max) / static_cast<Real>(two_pi)));
    return detail::finish_winding_table(table, std::move(rows), std::move(skipped), last_complete);
}

// Every probe n >= 1 whose partner lies in windings 2..max_winding.
template <typename Real>
winding_table winding_distance_table(const basic_spiral_table<Real>& table, std::int64_t max_winding)
{
    if (max_winding < 2)
        throw std::invalid_argument("winding_distance_table: max_winding must be >= 2");
    const Real need = static_cast<Real>(two_pi) * static_cast<Real>(max_winding) + std::numbers::pi_v<Real> / 2;
    if (table.angle_of(table.max_ray()) < need)
        throw capacity_error("winding_distance_table: table covers fewer than " + std::to_string(max_winding) +
                                 " windings",
                             table.max_n());
    std::vector<winding_row> rows;
    for (std::uint64_t n = 1;; ++n) {
        const std::uint64_t m = next_winding_partner(table, n);
        if (m == 0 || table.winding(m) > max_winding)
            break;
        rows.push_back({n, m, std::sqrt(double(m)) - std::sqrt(double(n)), 0, 0});
    }
    return detail::finish_winding_table(table, std::move(rows), {}, max_winding);
}

} // namespace sqspiral
