#pragma once

#include <string>

#include <json.hpp>

#include <sqspiral/area_fib.hpp>
#include <sqspiral/arm_tracer.hpp>
#include <sqspiral/prime_scan.hpp>

namespace sqspiral::cli {

using nlohmann::ordered_json;

inline ordered_json rule_json(rule_status s)
{
    if (s == rule_status::not_applicable)
        return nullptr;
    return s == rule_status::pass;
}

inline ordered_json systems_json(const direction_systems& d)
{
    ordered_json j;
    j["count"] = d.count();
    j["D"] = d.D;
    ordered_json b = ordered_json::array();
    for (const auto& x : d.b_hats)
        b.push_back(x.str());
    j["b_hats"] = b;
    return j;
}

inline std::string arms_json(const system_report& rep)
{
    ordered_json j;
    j["group"] = rep.group;
    j["max_n"] = rep.max_n;
    ordered_json arms = ordered_json::array();
    for (const auto& a : rep.arms) {
        ordered_json x;
        x["members"] = a.members;
        x["poly"] = a.fitted.str();
        x["canonical"] = {{"a", a.poly.a.str()}, {"b_hat", a.poly.b.str()}, {"c", a.poly.c.str()}};
        x["start_t"] = a.start_t;
        x["direction"] = to_string(a.dir);
        x["drifts"] = a.drifts;
        arms.push_back(std::move(x));
    }
    j["arms"] = std::move(arms);
    j["systems"] = {{"N", systems_json(rep.N)}, {"P", systems_json(rep.P)}};
    j["mixed_d"] = rep.mixed_d;
    const auto rc = verify_rule_5_2(rep);
    j["rule_5_2"] = {{"N", rule_json(rc.N)}, {"P", rule_json(rc.P)}};
    return j.dump(2) + "\n";
}

inline ordered_json series_json(const analysis_series& s)
{
    ordered_json j;
    j["label"] = s.label;
    if (s.claimed_limit) {
        j["claimed_limit"] = *s.claimed_limit;
        j["limit"] = s.limit_label;
    } else {
        j["claimed_limit"] = nullptr;
    }
    ordered_json terms = ordered_json::array();
    for (const auto& [i, v] : s.terms)
        terms.push_back({i, v});
    j["terms"] = std::move(terms);
    if (!s.empty() && s.claimed_limit) {
        j["last"] = s.last();
        j["deviation"] = s.last() - *s.claimed_limit;
    }
    return j;
}

inline std::string prime_rows_json(const std::vector<poly_density_row>& rows)
{
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows)
        arr.push_back({{"a", r.poly.a.str()},
                       {"b_hat", r.poly.b.str()},
                       {"c", r.poly.c.str()},
                       {"T", r.T},
                       {"prime_count", r.prime_count},
                       {"density", r.density},
                       {"coprime6", r.coprime6}});
    return arr.dump(2) + "\n";
}

inline std::string prime_arms_json(const prime_arm_summary& s)
{
    ordered_json j;
    j["max_n"] = s.max_n;
    j["min_density"] = s.min_density;
    j["D"] = s.D_filter;
    j["traced"] = s.traced;
    ordered_json arms = ordered_json::array();
    for (const auto& a : s.arms)
        arms.push_back({{"poly", a.trace.poly.str()},
                        {"direction", to_string(a.trace.dir)},
                        {"members", a.trace.members},
                        {"density", a.density},
                        {"baseline", a.baseline},
                        {"coprime6", a.coprime6}});
    j["arms"] = std::move(arms);
    ordered_json pairs = ordered_json::object();
    for (const auto& [b, cs] : s.c_by_bhat) {
        ordered_json c = ordered_json::array();
        for (const auto& v : cs)
            c.push_back(v.str());
        pairs[b.str()] = std::move(c);
    }
    j["c_by_b_hat"] = std::move(pairs);
    return j.dump(2) + "\n";
}

} // namespace sqspiral::cli
