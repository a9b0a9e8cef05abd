#include <cmath>

#include <gtest/gtest.h>

#include <sqspiral/prime_scan.hpp>

using namespace sqspiral;

namespace {

bool trial_prime(std::int64_t v)
{
    if (v < 2)
        return false;
    for (std::int64_t d = 2; d * d <= v; ++d)
        if (v % d == 0)
            return false;
    return true;
}

std::int64_t trial_count(const quadratic_poly& p, std::int64_t T)
{
    std::int64_t k = 0;
    for (std::int64_t t = 1; t <= T; ++t) {
        const auto v = eval(p, t);
        k += v.is_integer() && trial_prime(v.num());
    }
    return k;
}

// Direct check over a long run of arguments, both signs.
bool brute_coprime6(const quadratic_poly& p)
{
    for (std::int64_t t = -50; t <= 50; ++t) {
        const auto v = eval(p, t).num();
        if (v % 2 == 0 || v % 3 == 0)
            return false;
    }
    return true;
}

} // namespace

TEST(Sieve, MatchesTrialDivision)
{
    const auto pt = sieve(20'000);
    for (std::uint64_t n = 0; n <= 20'000; ++n)
        ASSERT_EQ(pt.is_prime(n), trial_prime(std::int64_t(n))) << n;
    EXPECT_EQ(pt.count_up_to(10'000), 1229u);
    EXPECT_EQ(pt.primes_up_to(20), (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19}));
    EXPECT_THROW(sieve(1), std::invalid_argument);
    EXPECT_THROW(sieve(1000, 10), capacity_error);
}

TEST(Coprime6, AgreesWithBruteForce)
{
    for (std::int64_t D : {18, 20, 21, 22}) {
        for (const auto& b : bhat_lattice(D)) {
            for (std::int64_t c = -20; c <= 20; ++c) {
                const quadratic_poly p{rational(D, 2), b, c};
                ASSERT_EQ(coprime6_check(p), brute_coprime6(p)) << p.str();
            }
        }
    }
    EXPECT_TRUE(coprime6_check({9, 27, 17}));
    EXPECT_TRUE(coprime6_check({11, 25, 13}));
    EXPECT_FALSE(coprime6_check({9, 7, 3}));
    EXPECT_THROW(coprime6_check({rational(1, 2), 0, 0}), std::domain_error);
}

TEST(PrimeCounts, FrozenValues)
{
    const auto pt = sieve(200'000);
    // Frozen from a trial-division run over t = 1..100.
    EXPECT_EQ(count_prime_values({9, 27, 17}, 100, pt), 53);
    EXPECT_EQ(count_prime_values({11, 25, 13}, 100, pt), 30);
    EXPECT_EQ(count_prime_values({9, 27, 17}, 50, pt), 31);
    for (const quadratic_poly& p : {quadratic_poly{9, 27, 17}, quadratic_poly{11, 25, 13}, quadratic_poly{1, 1, 41}})
        EXPECT_EQ(count_prime_values(p, 100, pt), trial_count(p, 100)) << p.str();
}

TEST(BhatLattice, Shape)
{
    EXPECT_EQ(bhat_lattice(18).size(), 18u);
    const auto h = bhat_lattice(21);
    EXPECT_EQ(h.front(), rational(1, 2));
    EXPECT_EQ(h.back(), rational(41, 2));
    EXPECT_THROW(bhat_lattice(0), std::invalid_argument);
}

TEST(Scan, SortedAndComplete)
{
    const auto rows = scan_prime_polys(18, -10, 10, 60);
    EXPECT_EQ(rows.size(), 18u * 21u);
    const auto pt = sieve(100'000);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) {
            ASSERT_GE(rows[i - 1].prime_count, rows[i].prime_count);
        }
        ASSERT_EQ(rows[i].prime_count, count_prime_values(rows[i].poly, 60, pt));
    }
    const auto b3 = canonicalize({9, 27, 17}).poly;
    EXPECT_EQ(b3, (quadratic_poly{9, 9, -1}));
    EXPECT_NE(std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r.poly == b3; }), rows.end());
    EXPECT_THROW(scan_prime_polys(18, 5, 4, 10), std::invalid_argument);
    const auto csv = prime_scan_csv(rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "a,b_hat,c,T,prime_count,density,coprime6");
}

TEST(Baseline, MeanInverseLog)
{
    EXPECT_DOUBLE_EQ(pnt_baseline({1000}), 1 / std::log(1000.0));
    EXPECT_DOUBLE_EQ(pnt_baseline({2, 1000}), 1 / std::log(1000.0)); // values below 3 are skipped
    EXPECT_EQ(pnt_baseline({}), 0.0);
}

TEST(PrimeArms, DensityAndCoprimality)
{
    const auto t = build_table(10'001);
    const auto s = prime_arm_report(t, 10'000);
    ASSERT_FALSE(s.arms.empty());
    for (const auto& a : s.arms) {
        EXPECT_EQ(a.trace.second_differential(), 18);
        EXPECT_GE(a.density, 0.6);
        EXPECT_GT(a.density, 3 * a.baseline);
        EXPECT_TRUE(a.coprime6);
    }
    EXPECT_GE(s.traced, s.arms.size());
}
