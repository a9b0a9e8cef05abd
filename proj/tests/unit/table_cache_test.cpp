#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include <sqspiral/table_cache.hpp>

using namespace sqspiral;
namespace fs = std::filesystem;

namespace {

std::string scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / "sqspiral_unit";
    fs::create_directories(dir);
    return (dir / name).string();
}

std::string slurp(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), {}};
}

void spit(const std::string& path, const std::string& bytes)
{
    std::ofstream os(path, std::ios::binary);
    os << bytes;
}

} // namespace

TEST(TableCache, RoundTripIsExact)
{
    const auto t = build_table(5000);
    const auto path = scratch("round.cache");
    write_table_cache(path, t);
    EXPECT_EQ(fs::file_size(path), 4u + 1u + 8u + 8u * 5001u);
    const auto back = read_table_cache(path);
    EXPECT_EQ(back, t);
    EXPECT_EQ(back.max_n(), 5000u);
}

TEST(TableCache, HeaderLayout)
{
    const auto path = scratch("layout.cache");
    write_table_cache(path, build_table(3));
    const auto b = slurp(path);
    ASSERT_GE(b.size(), 13u);
    EXPECT_EQ(b.substr(0, 4), "SQSP");
    EXPECT_EQ(static_cast<unsigned char>(b[4]), 0x01);
    EXPECT_EQ(static_cast<unsigned char>(b[5]), 3); // max_n, little endian
    for (int i = 6; i < 13; ++i)
        EXPECT_EQ(b[i], 0);
}

TEST(TableCache, RejectsDamage)
{
    const auto good = scratch("good.cache");
    write_table_cache(good, build_table(100));
    const auto bytes = slurp(good);

    const auto bad = scratch("bad.cache");
    spit(bad, "XQSP" + bytes.substr(4));
    EXPECT_THROW(read_table_cache(bad), io_error);

    auto v = bytes;
    v[4] = 0x02;
    spit(bad, v);
    EXPECT_THROW(read_table_cache(bad), io_error);

    spit(bad, bytes.substr(0, bytes.size() - 3));
    EXPECT_THROW(read_table_cache(bad), io_error);

    spit(bad, bytes + "x");
    EXPECT_THROW(read_table_cache(bad), io_error);

    EXPECT_THROW(read_table_cache(scratch("missing.cache")), io_error);
    EXPECT_THROW(write_table_cache(scratch("no/such/dir/x.cache"), build_table(3)), io_error);
}

TEST(TableCache, BudgetApplies)
{
    const auto path = scratch("budget.cache");
    write_table_cache(path, build_table(1000));
    EXPECT_THROW(read_table_cache(path, table_limits{100}), capacity_error);
}
