#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <sqspiral/sqspiral.hpp>

#include "config.hpp"
#include "embedded_data.hpp"
#include "reports.hpp"
#include "verify.hpp"

namespace {

using namespace sqspiral;
using namespace sqspiral::cli;

constexpr int exit_ok = 0;
constexpr int exit_verify = 1;
constexpr int exit_io = 2;
constexpr int exit_usage = 64;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Loads the cache when it is large enough, otherwise builds the table and
// tries to refresh the cache.
class table_store {
public:
    explicit table_store(const config& c) : cfg_(c) {}

    const spiral_table& get(std::uint64_t need)
    {
        if (table_ && table_->max_n() >= need)
            return *table_;
        const table_limits lim{cfg_.table_budget};
        if (std::filesystem::exists(cfg_.cache_path)) {
            try {
                auto cached = read_table_cache(cfg_.cache_path, lim);
                if (cached.max_n() >= need) {
                    table_ = std::move(cached);
                    return *table_;
                }
            } catch (const io_error& e) {
                std::cerr << "note: ignoring cache: " << e.what() << "\n";
            }
        }
        table_ = build_table(need, summation::compensated, lim);
        try {
            write_table_cache(cfg_.cache_path, *table_);
        } catch (const io_error& e) {
            std::cerr << "note: cache not written: " << e.what() << "\n";
        }
        return *table_;
    }

private:
    config cfg_;
    std::optional<spiral_table> table_;
};

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

int cmd_build(const config& cfg, std::uint64_t n)
{
    const auto t = build_table(n, summation::compensated, table_limits{cfg.table_budget});
    write_table_cache(cfg.cache_path, t);
    std::cout << "cache=" << cfg.cache_path << "\n"
              << "max_n=" << t.max_n() << "\n"
              << "final_angle=" << format_fixed(t.w(t.max_n()), 12) << "\n"
              << "c2_raw=" << format_fixed(c2_estimate(t, t.max_n()), 12) << "\n";
    return exit_ok;
}

std::vector<check> run_suite(const std::string& name, table_store& store, const config& cfg,
                             std::uint64_t prime_arm_n)
{
    const table_source src = [&](std::uint64_t n) -> const spiral_table& { return store.get(n); };
    if (name == "constants")
        return suite_constants(src);
    if (name == "table1")
        return suite_table1(src);
    if (name == "fig7")
        return suite_fig7();
    if (name == "fig15")
        return suite_fig15(src);
    if (name == "table2")
        return suite_table2(src, ref::parse_arm_sequences(arm_sequences_text));
    if (name == "table3")
        return suite_table3(ref::parse_polynomial_tables(polynomial_tables_text));
    if (name == "rule52")
        return suite_rule52(src);
    if (name == "fib")
        return suite_fib(src);
    if (name == "fig16")
        return suite_fig16(src);
    if (name == "primes")
        return suite_primes(src, cfg.prime_density, prime_arm_n);
    throw usage_error("unknown suite '" + name + "'");
}

int cmd_verify(const config& cfg, const std::string& suite, const std::string& report, std::uint64_t prime_arm_n)
{
    std::vector<std::string> names;
    if (suite == "all")
        names = suite_names();
    else if (std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end())
        names = {suite};
    else
        throw usage_error("unknown suite '" + suite + "' (expected one of constants, table1, fig7, fig15, table2, "
                          "table3, rule52, fib, fig16, primes, all)");
    table_store store(cfg);
    std::ostringstream os;
    std::size_t pass = 0, fail = 0;
    for (const auto& n : names) {
        for (const auto& c : run_suite(n, store, cfg, prime_arm_n)) {
            os << format_check(n, c) << "\n";
            (c.pass ? pass : fail)++;
        }
    }
    os << "SUMMARY  pass=" << pass << "  fail=" << fail << "\n";
    std::cout << os.str();
    if (!report.empty())
        write_text_file(report, os.str());
    return fail ? exit_verify : exit_ok;
}

trace_params make_trace_params(const config& cfg, std::uint64_t n, std::uint64_t seed_bound)
{
    trace_params tp;
    tp.seed_bound = seed_bound ? seed_bound
                               : std::max<std::uint64_t>(1, std::uint64_t(cfg.seed_bound_fraction * double(n)));
    return tp;
}

int cmd_arms(const config& cfg, const std::string& spec, std::uint64_t n, std::uint64_t seed_bound,
             const std::string& out)
{
    const auto g = parse_group_spec(spec, n);
    table_store store(cfg);
    const auto& t = store.get(n);
    auto rep = classify_systems(enumerate_arms(t, g, make_trace_params(cfg, n, seed_bound)), g);
    emit(cfg.format == output_format::json ? arms_json(rep) : arms_csv(rep), out);
    return exit_ok;
}

analysis_series pick_series(const std::string& name, std::int64_t max, table_store& store)
{
    if (name == "band")
        return square_band_ratio_series(max);
    if (name == "square-angle")
        return square_angle_series(store.get(std::uint64_t((max + 1) * (max + 1))), max);
    if (name == "same-arm")
        return same_arm_angle_series(store.get(std::uint64_t((max + 3) * (max + 3))), max);
    if (name == "fib-angle")
        return fib_angle_series_from(fib_segment_sums(std::size_t(max) + 1).angle).ratio;
    if (name == "fib-cumulative")
        return fib_angle_series_from(fib_segment_sums(std::size_t(max) + 1).angle).cumulative;
    if (name == "fib-area")
        return fib_area_ratio_series(std::size_t(max) + 1);
    throw usage_error("unknown series '" + name +
                      "' (expected band, square-angle, same-arm, fib-angle, fib-cumulative, fib-area)");
}

int cmd_areas(const config& cfg, const std::string& series, std::int64_t max, const std::string& plot,
              const std::string& out)
{
    if (max < 2)
        throw usage_error("--max must be at least 2");
    table_store store(cfg);
    const auto s = pick_series(series, max, store);
    emit(cfg.format == output_format::json ? series_json(s).dump(2) + "\n" : series_csv(s), out);
    if (!plot.empty())
        write_text_file(plot, render_report_figure(s));
    return exit_ok;
}

int cmd_fib(const config& cfg, bool areas, std::int64_t count, const std::string& variant, const std::string& out)
{
    if (count < 1)
        throw usage_error("--count must be positive");
    const auto seg = fib_segment_sums(std::size_t(count) + 1);
    analysis_series s;
    if (areas) {
        s = fib_area_ratio_series_from(seg.area);
    } else {
        const auto r = fib_angle_series_from(seg.angle);
        if (variant == "angles")
            s = r.angles;
        else if (variant == "ratio")
            s = r.ratio;
        else if (variant == "cumulative")
            s = r.cumulative;
        else
            throw usage_error("--variant must be angles, ratio or cumulative");
        if (variant == "angles")
            s.terms.resize(std::size_t(count));
    }
    emit(cfg.format == output_format::json ? series_json(s).dump(2) + "\n" : series_csv(s), out);
    return exit_ok;
}

int cmd_primes(const config& cfg, bool arms, std::int64_t D, std::int64_t c_lo, std::int64_t c_hi, std::int64_t T,
               std::size_t top, std::uint64_t n, const std::string& out)
{
    if (arms) {
        table_store store(cfg);
        const auto s = prime_arm_report(store.get(n + 1), n, cfg.prime_density, D);
        if (cfg.format == output_format::json) {
            emit(prime_arms_json(s), out);
        } else {
            std::ostringstream os;
            os << "a,b_hat,c,direction,length,density,baseline,coprime6\n";
            for (const auto& a : s.arms)
                os << a.trace.poly.a << ',' << a.trace.poly.b << ',' << a.trace.poly.c << ',' << to_string(a.trace.dir)
                   << ',' << a.trace.members.size() << ',' << format_fixed(a.density, 6) << ','
                   << format_fixed(a.baseline, 6) << ',' << (a.coprime6 ? "true" : "false") << '\n';
            emit(os.str(), out);
        }
        return exit_ok;
    }
    if (D < 1)
        throw usage_error("--D must be positive");
    if (T < 50)
        throw usage_error("--T must be at least 50");
    auto rows = scan_prime_polys(D, c_lo, c_hi, T);
    if (top && rows.size() > top)
        rows.resize(top);
    emit(cfg.format == output_format::json ? prime_rows_json(rows) : prime_scan_csv(rows), out);
    return exit_ok;
}

struct render_args {
    std::uint64_t n = 300;
    std::vector<std::string> groups;
    bool arms = false, rays = false, labels = false;
    std::string style, series, out;
    double scale = 1, canvas = 800;
    std::int64_t series_max = 60;
};

int cmd_render(const config& cfg, const render_args& ra)
{
    table_store store(cfg);
    if (!ra.series.empty()) {
        emit(render_report_figure(pick_series(ra.series, ra.series_max, store)), ra.out);
        return exit_ok;
    }
    render_spec spec;
    spec.max_n = ra.n;
    spec.scale = ra.scale;
    spec.canvas = ra.canvas;
    spec.mirror = cfg.mirror;
    if (!ra.style.empty()) {
        std::ifstream is(ra.style);
        if (!is)
            throw io_error("cannot read style file " + ra.style);
        std::stringstream ss;
        ss << is.rdbuf();
        spec.style = parse_render_style(ss.str());
    }
    static const char* palette[] = {"#d62728", "#2ca02c", "#1f77b4", "#9467bd", "#ff7f0e", "#8c564b"};
    const auto& t = store.get(ra.n);
    for (std::size_t i = 0; i < ra.groups.size(); ++i) {
        group_layer gl{parse_group_spec(ra.groups[i], ra.n), palette[i % 6], ra.rays, ra.labels};
        if (ra.arms) {
            const auto g = gl.group;
            const auto rep = classify_systems(enumerate_arms(t, g, make_trace_params(cfg, ra.n, 0)), g);
            for (const auto& a : rep.arms)
                spec.arms.push_back({a, a.dir == direction::P ? "#2ca02c" : "#1f77b4"});
        }
        spec.groups.push_back(std::move(gl));
    }
    emit(render_svg(t, spec), ra.out);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Square-root spiral toolkit: tables, arms, constants and figures"};
    app.require_subcommand(1);

    std::string config_path = "spiral.conf";
    std::optional<std::string> cache_flag, format_flag;
    std::optional<double> density_flag;
    bool mirror_flag = false;
    app.add_option("--config", config_path, "key=value config file")->capture_default_str();
    app.add_option("--cache", cache_flag, "table cache path (overrides SQSPIRAL_CACHE)");
    app.add_option("--format", format_flag, "csv or json");
    app.add_option("--prime-density", density_flag, "prime share required for arm tracing");
    app.add_flag("--mirror", mirror_flag, "flip y in rendered spirals");

    std::uint64_t build_n = 0;
    auto* build = app.add_subcommand("build", "build the angle table and write the cache");
    build->add_option("--n", build_n, "largest triangle index");

    std::string suite, report;
    std::uint64_t prime_arm_n = 10'000;
    auto* verify = app.add_subcommand("verify", "run a reproduction suite");
    verify->add_option("suite", suite, "constants|table1|fig7|fig15|table2|table3|rule52|fib|fig16|primes|all")
        ->required();
    verify->add_option("--report", report, "also write the report to this file");
    verify->add_option("--prime-arm-n", prime_arm_n, "bound for prime arm tracing")->capture_default_str();

    std::string group, arms_out;
    std::uint64_t arms_n = 600, seed_bound = 0;
    auto* arms = app.add_subcommand("arms", "trace and classify spiral arms of a number group");
    arms->add_option("--group", group, "div:<p> | squares | primes | fib | list:<a,b,...>")->required();
    arms->add_option("--n", arms_n, "largest member")->capture_default_str();
    arms->add_option("--seed-bound", seed_bound, "largest first seed member (default n * seed_bound_fraction)");
    arms->add_option("--out", arms_out, "output file");

    std::string series = "band", plot, areas_out;
    std::int64_t series_max = 60;
    auto* areas = app.add_subcommand("areas", "area and angle convergence series");
    areas->add_option("--series", series, "band|square-angle|same-arm|fib-angle|fib-cumulative|fib-area")
        ->capture_default_str();
    areas->add_option("--max", series_max, "largest index")->capture_default_str();
    areas->add_option("--plot", plot, "write an SVG chart");
    areas->add_option("--out", areas_out, "output file");

    bool fib_angles = false, fib_areas = false;
    std::int64_t fib_count = 10;
    std::string fib_variant = "angles", fib_out;
    auto* fib = app.add_subcommand("fib", "Fibonacci segment angles and area ratios");
    fib->add_flag("--angles", fib_angles, "angle series (default)");
    fib->add_flag("--areas", fib_areas, "area ratio series");
    fib->add_option("--count", fib_count, "number of terms")->capture_default_str();
    fib->add_option("--variant", fib_variant, "angles|ratio|cumulative")->capture_default_str();
    fib->add_option("--out", fib_out, "output file");

    bool prime_arms = false;
    std::int64_t D = 18, c_lo = -50, c_hi = 50, T = 100;
    std::size_t top = 0;
    std::uint64_t prime_n = 10'000;
    std::string primes_out;
    auto* primes = app.add_subcommand("primes", "prime-rich quadratics and prime arms");
    primes->add_flag("--arms", prime_arms, "trace prime arms instead of scanning polynomials");
    primes->add_option("--D", D, "second difference")->capture_default_str();
    primes->add_option("--c-min", c_lo, "smallest constant term")->capture_default_str();
    primes->add_option("--c-max", c_hi, "largest constant term")->capture_default_str();
    primes->add_option("--T", T, "number of sampled values")->capture_default_str();
    primes->add_option("--top", top, "keep only the best rows");
    primes->add_option("--n", prime_n, "bound for arm tracing")->capture_default_str();
    primes->add_option("--out", primes_out, "output file");

    render_args ra;
    auto* render = app.add_subcommand("render", "SVG of the spiral, groups and arms, or of a series");
    render->add_option("--n", ra.n, "largest ray")->capture_default_str();
    render->add_option("--group", ra.groups, "group to mark (repeatable)");
    render->add_flag("--arms", ra.arms, "overlay traced arms of each group");
    render->add_flag("--rays", ra.rays, "draw rays of group members");
    render->add_flag("--labels", ra.labels, "label group members");
    render->add_option("--style", ra.style, "key=value style file");
    render->add_option("--scale", ra.scale, "document units per spiral unit")->capture_default_str();
    render->add_option("--canvas", ra.canvas, "width and height in px")->capture_default_str();
    render->add_option("--series", ra.series, "plot a series instead (see areas --series)");
    render->add_option("--max", ra.series_max, "largest series index")->capture_default_str();
    render->add_option("--out", ra.out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        const bool explicit_config = app.count("--config") > 0;
        config cfg = load_config(config_path, explicit_config);
        if (cache_flag)
            cfg.cache_path = *cache_flag;
        if (format_flag)
            cfg.format = parse_format(*format_flag);
        if (density_flag) {
            if (!(*density_flag > 0 && *density_flag <= 1))
                throw usage_error("--prime-density must be in (0, 1]");
            cfg.prime_density = *density_flag;
        }
        if (mirror_flag)
            cfg.mirror = true;

        if (*build)
            return cmd_build(cfg, build_n ? build_n : cfg.max_n);
        if (*verify)
            return cmd_verify(cfg, suite, report, prime_arm_n);
        if (*arms)
            return cmd_arms(cfg, group, arms_n, seed_bound, arms_out);
        if (*areas)
            return cmd_areas(cfg, series, series_max, plot, areas_out);
        if (*fib) {
            if (fib_angles && fib_areas)
                throw usage_error("choose one of --angles and --areas");
            return cmd_fib(cfg, fib_areas, fib_count, fib_variant, fib_out);
        }
        if (*primes)
            return cmd_primes(cfg, prime_arms, D, c_lo, c_hi, T, top, prime_n, primes_out);
        if (*render)
            return cmd_render(cfg, ra);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const parse_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return exit_io;
    } catch (const capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
