#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "number_group.hpp"
#include "quad_poly.hpp"
#include "spiral_core.hpp"

namespace sqspiral {

enum class direction { P, N, indeterminate };

inline const char* to_string(direction d)
{
    switch (d) {
    case direction::P: return "P";
    case direction::N: return "N";
    default: return "indeterminate";
    }
}

struct trace_params {
    // Open window on the angle advanced between consecutive arm members.
    // The lower edge admits arms whose first step is far short of a turn
    // (some start around 80 degrees).
    double min_step = std::numbers::pi / 4;
    double max_step = 3 * std::numbers::pi;
    std::size_t min_length = 5;
    // Largest first seed member; 0 means max_n / 4.
    std::uint64_t seed_bound = 0;
    // Fraction of arm values that must belong to the group. At 1 the arm stops
    // at the first non-member; below 1 the arm runs through gaps and is kept
    // if its members make up at least this share.
    double min_density = 1.0;
};

struct arm {
    std::vector<std::uint64_t> members;
    quadratic_poly fitted; // through members[0..2] at t = 1, 2, 3
    quadratic_poly poly;   // canonical: b in [0, 2a)
    std::int64_t start_t = 0; // eval(poly, start_t + i) == members[i]
    std::vector<double> drifts; // step angle minus 2pi, not reduced
    direction dir = direction::indeterminate;
    std::size_t in_group = 0; // equals members.size() for exact tracing

    std::int64_t second_differential() const { return (poly.a + poly.a).num(); }
    double density() const { return members.empty() ? 0.0 : double(in_group) / double(members.size()); }
};

// Per-step drift. The window keeps every step inside (pi/4, 3pi), so the raw
// value lies in (-7pi/4, pi) and a short first step stays negative instead of
// wrapping round to a large positive value.
template <typename Real>
std::vector<double> step_drifts(const basic_spiral_table<Real>& table, const std::vector<std::uint64_t>& seq)
{
    std::vector<double> d;
    for (std::size_t i = 1; i < seq.size(); ++i)
        d.push_back(static_cast<double>(table.angle_of(seq[i]) - table.angle_of(seq[i - 1])) - two_pi);
    return d;
}

// Sign of the median drift over the first min(5, len - 1) steps. The median
// rather than the mean, since one large transient step otherwise flips a few
// short arms.
inline direction direction_from_drifts(const std::vector<double>& drifts)
{
    if (drifts.empty())
        throw std::invalid_argument("direction_of: arm needs at least 2 members");
    std::vector<double> head(drifts.begin(), drifts.begin() + std::min<std::size_t>(5, drifts.size()));
    std::sort(head.begin(), head.end());
    const std::size_t k = head.size();
    const double med = k % 2 ? head[k / 2] : 0.5 * (head[k / 2 - 1] + head[k / 2]);
    if (med < 0)
        return direction::P;
    if (med > 0)
        return direction::N;
    return direction::indeterminate;
}

template <typename Real>
direction direction_of(const arm& a, const basic_spiral_table<Real>& table)
{
    return direction_from_drifts(step_drifts(table, a.members));
}

namespace detail {

template <typename Real>
bool in_window(const basic_spiral_table<Real>& table, std::uint64_t from, std::uint64_t to, const trace_params& tp)
{
    const double d = static_cast<double>(table.angle_of(to) - table.angle_of(from));
    return d > tp.min_step && d < tp.max_step;
}

template <typename Real>
void check_capacity(const basic_spiral_table<Real>& table, const number_group& g)
{
    if (g.max_n() > table.max_ray())
        throw capacity_error("arm tracing: group bound " + std::to_string(g.max_n()) + " exceeds table rays up to " +
                                 std::to_string(table.max_ray()),
                             table.max_ray());
}

inline std::optional<std::uint64_t> as_index(const rational& v)
{
    if (!v.is_integer() || v.num() < 1)
        return std::nullopt;
    return static_cast<std::uint64_t>(v.num());
}

} // namespace detail

// Traces the arm through a seed triple; nullopt when the seed does not extend
// to min_length.
template <typename Real>
std::optional<arm> trace_arm(const basic_spiral_table<Real>& table, const number_group& group,
                             const std::array<std::uint64_t, 3>& seed, const trace_params& tp = {})
{
    detail::check_capacity(table, group);
    const auto [m1, m2, m3] = seed;
    if (!(m1 < m2 && m2 < m3) || m3 > group.max_n())
        return std::nullopt;
    if (!group.contains(m1) || !group.contains(m2) || !group.contains(m3))
        return std::nullopt;
    if (!detail::in_window(table, m1, m2, tp) || !detail::in_window(table, m2, m3, tp))
        return std::nullopt;

    const quadratic_poly p = newton_quadratic(std::int64_t(m1), std::int64_t(m2), std::int64_t(m3));
    if (p.a <= 0)
        return std::nullopt;

    const bool exact = tp.min_density >= 1.0;
    std::vector<std::uint64_t> fwd{m1, m2, m3};
    std::int64_t t = 4;
    for (;; ++t) {
        auto v = detail::as_index(eval(p, t));
        if (!v || *v > group.max_n() || *v <= fwd.back() || !detail::in_window(table, fwd.back(), *v, tp))
            break;
        if (exact && !group.contains(*v))
            break;
        fwd.push_back(*v);
    }
    std::vector<std::uint64_t> back; // reversed prefix
    t = 0;
    for (;; --t) {
        const std::uint64_t next = back.empty() ? m1 : back.back();
        auto v = detail::as_index(eval(p, t));
        if (!v || *v >= next || !detail::in_window(table, *v, next, tp))
            break;
        if (exact && !group.contains(*v))
            break;
        back.push_back(*v);
    }
    const std::int64_t first_t = t + 1;

    std::vector<std::uint64_t> seq(back.rbegin(), back.rend());
    seq.insert(seq.end(), fwd.begin(), fwd.end());
    std::size_t lo = 0, hi = seq.size();
    if (!exact) {
        while (lo < hi && !group.contains(seq[lo]))
            ++lo;
        while (hi > lo && !group.contains(seq[hi - 1]))
            --hi;
    }
    if (hi - lo < tp.min_length)
        return std::nullopt;

    arm out;
    out.members.assign(seq.begin() + static_cast<std::ptrdiff_t>(lo), seq.begin() + static_cast<std::ptrdiff_t>(hi));
    out.in_group = static_cast<std::size_t>(
        std::count_if(out.members.begin(), out.members.end(), [&](auto v) { return group.contains(v); }));
    if (double(out.in_group) < tp.min_density * double(out.members.size()))
        return std::nullopt;

    const std::int64_t t0 = first_t + static_cast<std::int64_t>(lo);
    out.fitted = shift(p, t0 - 1);
    const auto canon = canonicalize(out.fitted);
    out.poly = canon.poly;
    out.start_t = 1 - canon.shift_used;
    out.drifts = step_drifts(table, out.members);
    out.dir = direction_from_drifts(out.drifts);
    return out;
}

// All window-consistent seeds with m1 <= seed_bound, traced and deduplicated by
// canonical polynomial. For one polynomial the longest trace wins; ties keep
// the earliest seed. Output is sorted by canonical (a, b, c).
template <typename Real>
std::vector<arm> enumerate_arms(const basic_spiral_table<Real>& table, const number_group& group,
                                const trace_params& tp = {})
{
    detail::check_capacity(table, group);
    const std::uint64_t bound = tp.seed_bound ? tp.seed_bound : group.max_n() / 4;
    const auto mem = members(group, group.max_n());
    std::vector<double> ang(mem.size());
    for (std::size_t i = 0; i < mem.size(); ++i)
        ang[i] = static_cast<double>(table.angle_of(mem[i]));

    std::map<quadratic_poly, arm> found;
    for (std::size_t i = 0; i < mem.size() && mem[i] <= bound; ++i) {
        for (std::size_t j = i + 1; j < mem.size(); ++j) {
            const double d1 = ang[j] - ang[i];
            if (d1 >= tp.max_step)
                break;
            if (d1 <= tp.min_step)
                continue;
            for (std::size_t k = j + 1; k < mem.size(); ++k) {
                const double d2 = ang[k] - ang[j];
                if (d2 >= tp.max_step)
                    break;
                if (d2 <= tp.min_step)
                    continue;
                auto a = trace_arm(table, group, {mem[i], mem[j], mem[k]}, tp);
                if (!a)
                    continue;
                auto it = found.find(a->poly);
                if (it == found.end())
                    found.emplace(a->poly, std::move(*a));
                else if (a->members.size() > it->second.members.size())
                    it->second = std::move(*a);
            }
        }
    }
    std::vector<arm> out;
    out.reserve(found.size());
    for (auto& [k, v] : found)
        out.push_back(std::move(v));
    return out;
}

// Arms sharing direction and second differential.
struct arm_family {
    direction dir = direction::indeterminate;
    std::int64_t D = 0;
    double asymptotic_drift = 0; // 2 sqrt(D/2) - 2pi
    std::vector<rational> b_hats; // sorted, distinct
    std::vector<std::size_t> arm_indices;
};

struct direction_systems {
    bool present = false;
    std::int64_t D = 0;
    std::vector<rational> b_hats;
    std::vector<std::size_t> arm_indices;
    std::size_t count() const noexcept { return b_hats.size(); }
};

struct system_report {
    std::string group;
    std::uint64_t max_n = 0;
    std::uint64_t divisor = 0; // 0 unless the group is divisible_by
    std::vector<arm> arms;
    std::vector<arm_family> families; // every (direction, D) seen
    direction_systems N, P;
    bool mixed_d = false; // principal D differs between N and P
};

// A direction keeps its natural family unless the other one sits closer to a
// whole turn by more than this margin.
inline constexpr double family_preference_margin = std::numbers::pi / 6;

namespace detail {

inline double asymptotic_step_drift(std::int64_t D) { return 2.0 * std::sqrt(double(D) / 2.0) - two_pi; }

// Among one direction's families, take the largest D that falls short of a
// turn (lo) and the smallest that overshoots (hi). P arms naturally belong to
// lo, N arms to hi.
inline const arm_family* principal_family(const std::vector<arm_family>& fams, direction dir)
{
    const arm_family* lo = nullptr;
    const arm_family* hi = nullptr;
    const arm_family* most = nullptr;
    for (const auto& f : fams) {
        if (f.dir != dir)
            continue;
        if (!most || f.b_hats.size() > most->b_hats.size())
            most = &f;
        if (f.asymptotic_drift < 0 && (!lo || f.D > lo->D))
            lo = &f;
        if (f.asymptotic_drift > 0 && (!hi || f.D < hi->D))
            hi = &f;
    }
    const arm_family* natural = dir == direction::P ? lo : hi;
    const arm_family* other = dir == direction::P ? hi : lo;
    if (natural && other)
        return std::abs(natural->asymptotic_drift) <= std::abs(other->asymptotic_drift) + family_preference_margin
                   ? natural
                   : other;
    if (natural)
        return natural;
    if (other)
        return other;
    return most;
}

} // namespace detail

inline system_report classify_systems(std::vector<arm> arms, const number_group& group)
{
    system_report rep;
    rep.group = group.spec();
    rep.max_n = group.max_n();
    rep.divisor = group.kind() == group_kind::divisible_by ? group.divisor() : 0;

    std::map<std::pair<int, std::int64_t>, arm_family> fams;
    for (std::size_t i = 0; i < arms.size(); ++i) {
        const auto& a = arms[i];
        if (a.dir == direction::indeterminate)
            continue;
        auto& f = fams[{int(a.dir), a.second_differential()}];
        f.dir = a.dir;
        f.D = a.second_differential();
        f.asymptotic_drift = detail::asymptotic_step_drift(f.D);
        f.arm_indices.push_back(i);
        if (std::find(f.b_hats.begin(), f.b_hats.end(), a.poly.b) == f.b_hats.end())
            f.b_hats.push_back(a.poly.b);
    }
    for (auto& [k, f] : fams) {
        std::sort(f.b_hats.begin(), f.b_hats.end());
        rep.families.push_back(std::move(f));
    }
    for (direction d : {direction::N, direction::P}) {
        auto& slot = d == direction::N ? rep.N : rep.P;
        if (const auto* f = detail::principal_family(rep.families, d)) {
            slot.present = true;
            slot.D = f->D;
            slot.b_hats = f->b_hats;
            slot.arm_indices = f->arm_indices;
        }
    }
    rep.mixed_d = rep.N.present && rep.P.present && rep.N.D != rep.P.D;
    rep.arms = std::move(arms);
    return rep;
}

enum class rule_status { pass, fail, not_applicable };

inline const char* to_string(rule_status s)
{
    switch (s) {
    case rule_status::pass: return "pass";
    case rule_status::fail: return "fail";
    default: return "not_applicable";
    }
}

struct rule_check {
    rule_status N = rule_status::not_applicable;
    rule_status P = rule_status::not_applicable;
};

// divisor x number of systems == second differential, per direction.
inline rule_check verify_rule_5_2(const system_report& rep)
{
    rule_check rc;
    if (rep.divisor == 0)
        return rc;
    auto one = [&](const direction_systems& s) {
        if (!s.present)
            return rule_status::fail;
        return std::int64_t(rep.divisor) * std::int64_t(s.count()) == s.D ? rule_status::pass : rule_status::fail;
    };
    rc.N = one(rep.N);
    rc.P = one(rep.P);
    return rc;
}

// b values form a progression of step p that fills [0, D).
inline bool bhat_lattice_complete(const direction_systems& s, std::uint64_t p)
{
    if (!s.present || p == 0 || s.D % std::int64_t(p) != 0)
        return false;
    if (std::int64_t(s.b_hats.size()) != s.D / std::int64_t(p))
        return false;
    for (std::size_t i = 1; i < s.b_hats.size(); ++i)
        if (s.b_hats[i] - s.b_hats[i - 1] != rational(std::int64_t(p)))
            return false;
    return s.b_hats.front() >= 0 && s.b_hats.back() < rational(s.D);
}

// One arm per row; members are space separated.
inline std::string arms_csv(const system_report& rep)
{
    std::ostringstream os;
    os << "group,max_n,a,b_hat,c,start_t,direction,length,members\n";
    for (const auto& a : rep.arms) {
        os << rep.group << ',' << rep.max_n << ',' << a.poly.a << ',' << a.poly.b << ',' << a.poly.c << ','
           << a.start_t << ',' << to_string(a.dir) << ',' << a.members.size() << ',';
        for (std::size_t i = 0; i < a.members.size(); ++i)
            os << (i ? " " : "") << a.members[i];
        os << '\n';
    }
    return os.str();
}

} // namespace sqspiral
