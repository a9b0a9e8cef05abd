#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <sqspiral/spiral_core.hpp>

using namespace sqspiral;

namespace {

// Straight long double sum, independent of the table code.
long double oracle_w(std::uint64_t k)
{
    long double s = 0;
    for (std::uint64_t n = 1; n <= k; ++n)
        s += std::atan(1.0L / std::sqrt(static_cast<long double>(n)));
    return s;
}

const spiral_table& table_1e5()
{
    static const auto t = build_table(100'000);
    return t;
}

} // namespace

TEST(SegmentAngle, KnownValues)
{
    EXPECT_DOUBLE_EQ(segment_angle(1), std::numbers::pi / 4);
    EXPECT_NEAR(segment_angle(100), 0.0996686524911620, 1e-15);
    EXPECT_NEAR(segment_angle(3), std::numbers::pi / 6, 1e-15);
    EXPECT_THROW(segment_angle(0), std::domain_error);
}

TEST(Reduce, Ranges)
{
    EXPECT_DOUBLE_EQ(reduce_signed(std::numbers::pi), std::numbers::pi);
    EXPECT_NEAR(reduce_signed(-std::numbers::pi), std::numbers::pi, 1e-15);
    EXPECT_NEAR(reduce_signed(7.0), 7.0 - two_pi, 1e-15);
    EXPECT_NEAR(reduce_positive(-1.0), two_pi - 1.0, 1e-15);
    EXPECT_EQ(reduce_positive(0.0), 0.0);
    EXPECT_LT(reduce_positive(two_pi), two_pi);
}

TEST(Table, MatchesLongDoubleSum)
{
    const auto& t = table_1e5();
    EXPECT_EQ(t.max_n(), 100'000u);
    EXPECT_EQ(t.w(0), 0.0);
    for (std::uint64_t k : {1u, 2u, 17u, 1000u, 100'000u})
        EXPECT_NEAR(t.w(k), double(oracle_w(k)), 1e-12) << k;
}

TEST(Table, RayGeometry)
{
    const auto& t = table_1e5();
    const auto r1 = t.ray(1);
    EXPECT_DOUBLE_EQ(r1.x, 1.0);
    EXPECT_DOUBLE_EQ(r1.y, 0.0);
    EXPECT_EQ(r1.winding, 1);
    const auto r2 = t.ray(2);
    EXPECT_NEAR(r2.x, 1.0, 1e-15);
    EXPECT_NEAR(r2.y, 1.0, 1e-15);
    for (std::uint64_t n : {5u, 50u, 5000u}) {
        const auto r = t.ray(n);
        EXPECT_NEAR(std::hypot(r.x, r.y), std::sqrt(double(n)), 1e-9);
        EXPECT_GE(r.angle_mod, 0.0);
        EXPECT_LT(r.angle_mod, two_pi);
    }
    EXPECT_EQ(t.max_ray(), 100'001u);
    EXPECT_NO_THROW(t.ray(t.max_ray()));
    EXPECT_THROW(t.ray(t.max_ray() + 1), std::out_of_range);
    EXPECT_THROW(t.angle_of(0), std::domain_error);
}

TEST(Table, WindingBoundaries)
{
    const auto& t = table_1e5();
    // First ray past one full turn, found by linear scan.
    std::uint64_t first = 1;
    while (t.angle_of(first) < two_pi)
        ++first;
    EXPECT_EQ(t.winding(first - 1), 1);
    EXPECT_EQ(t.winding(first), 2);
    EXPECT_EQ(t.first_ray_at_or_after(two_pi), first);
    EXPECT_EQ(t.first_ray_at_or_after(1e9), t.max_ray() + 1);
}

TEST(Table, PlainAndCompensatedAgreeAt1e5)
{
    const auto plain = build_table(100'000, summation::plain);
    EXPECT_EQ(plain.built_with(), summation::plain);
    EXPECT_NEAR(plain.w(100'000), table_1e5().w(100'000), 1e-11);
}

TEST(Table, CompensatedStaysCloseToLongDoubleAt1e7)
{
    const auto comp = build_table(10'000'000, summation::compensated);
    const auto plain = build_table(10'000'000, summation::plain);
    const long double ref = oracle_w(10'000'000);
    const double comp_err = std::abs(double(comp.w(10'000'000) - ref));
    const double plain_err = std::abs(double(plain.w(10'000'000) - ref));
    EXPECT_LE(comp_err, 1e-10);
    // Plain summation drifts further; it is the one to avoid at this size.
    EXPECT_GT(plain_err, comp_err);
}

TEST(Table, CapacityAndArguments)
{
    EXPECT_THROW(build_table(0), std::invalid_argument);
    EXPECT_THROW(build_table(1000, summation::compensated, table_limits{500}), capacity_error);
    try {
        build_table(1000, summation::compensated, table_limits{500});
    } catch (const capacity_error& e) {
        EXPECT_EQ(e.limit(), 499u);
    }
    EXPECT_THROW(spiral_table({1.0, 2.0}, summation::plain), std::invalid_argument);
}

TEST(C2, RawEstimateAndDecrease)
{
    const auto& t = table_1e5();
    EXPECT_NEAR(c2_estimate(t, 1), std::numbers::pi / 4 - 2, 1e-15);
    for (std::uint64_t k = 2; k <= 1000; ++k)
        ASSERT_LT(c2_estimate(t, k), c2_estimate(t, k - 1)) << k;
    EXPECT_THROW(c2_estimate(t, 0), std::out_of_range);
}

TEST(C2, LeastSquaresRecoversExactModel)
{
    // Values built from a known expansion in u = k^{-1/2}.
    std::vector<std::uint64_t> ks{16, 64, 256, 1024, 4096};
    std::vector<double> vals;
    for (auto k : ks) {
        const double u = 1 / std::sqrt(double(k));
        vals.push_back(-2.5 + 0.5 * u - 0.25 * u * u + 0.125 * u * u * u);
    }
    EXPECT_NEAR(c2_extrapolate_values(ks, vals), -2.5, 1e-12);
}

TEST(C2, ExtrapolationGuards)
{
    using ks = std::vector<std::uint64_t>;
    using vs = std::vector<double>;
    EXPECT_THROW(c2_extrapolate_values(ks{10, 100, 1000}, vs{1, 1, 1}), std::invalid_argument);
    EXPECT_THROW(c2_extrapolate_values(ks{10, 15, 100, 1000}, vs{1, 2, 3, 4}), std::invalid_argument);
    EXPECT_DOUBLE_EQ(c2_extrapolate_values(ks{10, 100, 1000, 10000}, vs{3, 3, 3, 3}), 3.0);
}

TEST(C2, ExtrapolatedConstant)
{
    const auto t = build_table(1'000'000);
    // Frozen reference value of the constant.
    EXPECT_NEAR(c2_extrapolate(t, {1'000, 10'000, 100'000, 1'000'000}), -2.157782996659, 1e-8);
}

TEST(Archimedean, RadiusAndGap)
{
    const double c2 = -2.157782996659;
    EXPECT_NEAR(archimedean_radius(0.0, c2), 1.0788914983295, 1e-12);
    EXPECT_THROW(archimedean_radius(-1.0, c2), std::domain_error);
    const auto& t = table_1e5();
    EXPECT_NEAR(archimedean_radius(t.angle_of(10'000), c2), 100.0, 1e-3);
    EXPECT_NEAR(radial_gap(1e6) * 2000, 1.0, 1e-6);
}

TEST(Winding, PartnerIsArgmin)
{
    const auto& t = table_1e5();
    for (std::uint64_t n : {2u, 3u, 10u, 121u, 4000u}) {
        const auto m = next_winding_partner(t, n);
        const double target = t.angle_of(n) + two_pi;
        // Brute force over a generous window.
        std::uint64_t best = 1;
        for (std::uint64_t j = 1; j <= 20'000; ++j)
            if (std::abs(t.angle_of(j) - target) < std::abs(t.angle_of(best) - target))
                best = j;
        EXPECT_EQ(m, best) << n;
    }
    EXPECT_EQ(next_winding_partner(t, t.max_ray()), 0u);
}

TEST(Winding, PublishedPairsAndMeans)
{
    const auto t = build_table(1000);
    const auto wt = winding_distance_table(t, {2, 3, 5, 9, 10}, 300);
    ASSERT_EQ(wt.rows.size(), 5u);
    EXPECT_EQ(wt.rows[0].m, 21u);
    EXPECT_EQ(wt.rows[1].m, 24u);
    EXPECT_EQ(wt.rows[2].m, 29u);
    EXPECT_NEAR(wt.rows[0].distance, 3.16836, 1e-5);
    EXPECT_EQ(wt.rows[0].winding, 2);
}

TEST(Winding, MeansApproachPi)
{
    const auto& t = table_1e5();
    const auto wt = winding_distance_table(t, 40);
    for (std::int64_t w = 30; w <= 40; ++w)
        EXPECT_NEAR(wt.averages.at(w), std::numbers::pi, 1e-4) << w;
    EXPECT_GT(std::abs(wt.averages.at(2) - std::numbers::pi), std::abs(wt.averages.at(40) - std::numbers::pi));
    EXPECT_THROW(winding_distance_table(t, 1), std::invalid_argument);
    EXPECT_THROW(winding_distance_table(build_table(100), 50), capacity_error);
}
