// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <sqspiral/sqspiral.hpp>

#include "embedded_data.hpp"
#include "verify.hpp"

namespace {

using namespace sqspiral;
using namespace sqspiral::cli;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0)
{
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// Keeps the largest table built so far.
class tables {
public:
    const spiral_table& operator()(std::uint64_t n)
    {
        if (!t_ || t_->max_n() < n)
            t_ = std::make_unique<spiral_table>(build_table(n));
        return *t_;
    }

private:
    std::unique_ptr<spiral_table> t_;
};

struct outcome {
    bool pass = true;
    std::string detail;
};

// All checks of a suite must pass; failing ids are listed.
outcome all_of(const std::vector<check>& checks, const std::vector<std::string>& only = {})
{
    outcome o;
    std::size_t n = 0, ok = 0;
    std::string bad;
    for (const auto& c : checks) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end())
            continue;
        ++n;
        if (c.pass)
            ++ok;
        else
            bad += (bad.empty() ? "" : ", ") + c.id + " (measured " + c.measured + ", expected " + c.expected + ")";
    }
    o.pass = n > 0 && ok == n;
    o.detail = std::to_string(ok) + "/" + std::to_string(n) + " checks";
    if (!bad.empty())
        o.detail += "; failing: " + bad;
    if (n == 0)
        o.detail = "no checks selected";
    return o;
}

std::string slurp(const fs::path& p)
{
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), {}};
}

int run(const std::string& args, const fs::path& out)
{
    const std::string cmd = std::string("\"") + SQSPIRAL_CLI + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
    return std::system(cmd.c_str());
}

outcome determinism()
{
    const fs::path dir = SQSPIRAL_SCRATCH;
    fs::create_directories(dir);
    ::setenv("SQSPIRAL_CACHE", (dir / "table.cache").c_str(), 1);
    run("verify all", dir / "verify1.txt");
    run("verify all", dir / "verify2.txt");
    run("render --n 600 --group div:7 --group squares --arms --rays --labels", dir / "render1.svg");
    run("render --n 600 --group div:7 --group squares --arms --rays --labels", dir / "render2.svg");
    run("render --series fib-area --max 30", dir / "fig1.svg");
    run("render --series fib-area --max 30", dir / "fig2.svg");
    const auto v1 = slurp(dir / "verify1.txt"), v2 = slurp(dir / "verify2.txt");
    const auto r1 = slurp(dir / "render1.svg"), r2 = slurp(dir / "render2.svg");
    const auto f1 = slurp(dir / "fig1.svg"), f2 = slurp(dir / "fig2.svg");
    outcome o;
    o.pass = !v1.empty() && v1 == v2 && !r1.empty() && r1 == r2 && !f1.empty() && f1 == f2 &&
             v1.find("SUMMARY") != std::string::npos && r1.find("</svg>") != std::string::npos;
    o.detail = "verify " + std::to_string(v1.size()) + " bytes " + (v1 == v2 ? "identical" : "DIFFER") + ", render " +
               std::to_string(r1.size()) + " bytes " + (r1 == r2 ? "identical" : "DIFFER") + ", figure " +
               (f1 == f2 ? "identical" : "DIFFER");
    return o;
}

} // namespace

int main()
{
    tables store;
    const table_source src = [&](std::uint64_t n) -> const spiral_table& { return store(n); };
    std::vector<std::pair<std::string, outcome>> results;

    {
        const auto t0 = clock_type::now();
        auto o = all_of(suite_constants(src), {"c2-extrapolated"});
        const double secs = seconds_since(t0);
        // The suite also runs the other constant checks; the limit is generous.
        o.pass = o.pass && secs < 30;
        o.detail += "; " + g3(secs) + " s incl. table to 1e7";
        results.emplace_back("C1  c2 extrapolated to 1e-8 within 30 s", o);
    }
    results.emplace_back("C2  winding distance table", all_of(suite_table1(src)));
    results.emplace_back("C3  square band area ratios", all_of(suite_fig7()));
    results.emplace_back("C4  square and same-arm angle limits", all_of(suite_fig15(src)));
    results.emplace_back("C5  printed polynomial tables by Newton fit",
                         all_of(suite_table3(ref::parse_polynomial_tables(polynomial_tables_text))));
    {
        const auto t0 = clock_type::now();
        auto o = all_of(suite_table2(src, ref::parse_arm_sequences(arm_sequences_text)));
        const double secs = seconds_since(t0);
        o.pass = o.pass && secs < 60;
        o.detail += "; " + g3(secs) + " s";
        results.emplace_back("C6  arm discovery at max_n 600", o);
    }
    results.emplace_back("C7  system counting rule and lattice", all_of(suite_rule52(src)));
    results.emplace_back("C8  Fibonacci angle and area constants", all_of(suite_fib(src)));
    results.emplace_back("C9  axis crossings and difference graph", all_of(suite_fig16(src)));
    results.emplace_back("C10 prime-rich quadratics",
                         all_of(suite_primes(src, 0.6, 10'000),
                                {"B3-coprime6", "B3-primes-t1..100", "B3-density-t1..100", "B3-density-t1..50",
                                 "K5-coprime6", "K5-primes-t1..100", "K5-density-t1..100"}));
    results.emplace_back("C11 deterministic reports and SVG", determinism());

    std::size_t failed = 0;
    for (const auto& [name, o] : results) {
        std::cout << (o.pass ? "PASS  " : "FAIL  ") << name << "  # " << o.detail << "\n";
        failed += !o.pass;
    }
    std::cout << "ACCEPTANCE  pass=" << results.size() - failed << "  fail=" << failed << "\n";
    return failed ? 1 : 0;
}
