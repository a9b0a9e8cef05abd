#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "area_fib.hpp"
#include "arm_tracer.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "number_group.hpp"
#include "spiral_core.hpp"

namespace sqspiral {

struct render_style {
    std::string background = "#ffffff";
    std::string spiral_stroke = "#000000";
    double spiral_width = 0.02;
    std::string ray_stroke = "#999999";
    double ray_width = 0.01;
    double arm_width = 0.05;
    double marker_radius = 0.12;
    double font_size = 0.35;
    std::string label_color = "#333333";
};

// key=value lines; lines starting with '#' are comments, since colours use '#'.
// Unknown keys are errors.
inline render_style parse_render_style(const std::string& text, render_style st = {})
{
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw parse_error("style line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        auto num = [&] {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(val, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != val.size() || !(v > 0))
                throw parse_error("style key '" + key + "' needs a positive number, got '" + val + "'");
            return v;
        };
        if (key == "background") st.background = val;
        else if (key == "spiral_stroke") st.spiral_stroke = val;
        else if (key == "spiral_width") st.spiral_width = num();
        else if (key == "ray_stroke") st.ray_stroke = val;
        else if (key == "ray_width") st.ray_width = num();
        else if (key == "arm_width") st.arm_width = num();
        else if (key == "marker_radius") st.marker_radius = num();
        else if (key == "font_size") st.font_size = num();
        else if (key == "label_color") st.label_color = val;
        else
            throw parse_error("style line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return st;
}

struct group_layer {
    number_group group;
    std::string color = "#d62728";
    bool rays = false;
    bool labels = false;
};

struct arm_layer {
    arm trace;
    std::string color = "#1f77b4";
};

struct render_spec {
    std::uint64_t max_n = 100;
    std::vector<group_layer> groups;
    std::vector<arm_layer> arms;
    double canvas = 800; // width and height in px
    double scale = 1;    // document units per spiral unit
    bool mirror = false; // flip y for comparison with clockwise drawings
    render_style style;
};

namespace detail {

inline std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

inline std::string num6(double v) { return format_fixed(v, 6); }

} // namespace detail

// Document coordinates of the endpoint of ray n. SVG's y axis points down, so
// counterclockwise plots with y negated unless mirrored.
template <typename Real>
std::pair<double, double> ray_point(const basic_spiral_table<Real>& table, std::uint64_t n, const render_spec& spec)
{
    const auto r = table.ray(n);
    const double y = spec.mirror ? r.y : -r.y;
    return {r.x * spec.scale, y * spec.scale};
}

template <typename Real>
std::string render_svg(const basic_spiral_table<Real>& table, const render_spec& spec)
{
    using detail::num6;
    if (!(spec.scale > 0))
        throw std::invalid_argument("render_svg: scale must be positive");
    if (spec.max_n < 1 || spec.max_n > table.max_ray())
        throw std::out_of_range("render_svg: max_n " + std::to_string(spec.max_n) + " outside table range 1.." +
                                std::to_string(table.max_ray()));
    const auto& st = spec.style;
    const double extent = (std::sqrt(double(spec.max_n)) + 1.0) * spec.scale;
    const double sw = spec.scale;
    auto pt = [&](std::uint64_t n) {
        auto [x, y] = ray_point(table, n, spec);
        return num6(x) + "," + num6(y);
    };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num6(spec.canvas) << "\" height=\""
       << num6(spec.canvas) << "\" viewBox=\"" << num6(-extent) << ' ' << num6(-extent) << ' ' << num6(2 * extent)
       << ' ' << num6(2 * extent) << "\">\n";
    os << "<rect x=\"" << num6(-extent) << "\" y=\"" << num6(-extent) << "\" width=\"" << num6(2 * extent)
       << "\" height=\"" << num6(2 * extent) << "\" fill=\"" << st.background << "\"/>\n";

    os << "<polyline id=\"spiral\" fill=\"none\" stroke=\"" << st.spiral_stroke << "\" stroke-width=\""
       << num6(st.spiral_width * sw) << "\" points=\"";
    for (std::uint64_t n = 1; n <= spec.max_n; ++n)
        os << (n > 1 ? " " : "") << pt(n);
    os << "\"/>\n";

    for (std::size_t gi = 0; gi < spec.groups.size(); ++gi) {
        const auto& layer = spec.groups[gi];
        const auto mem = members(layer.group, spec.max_n);
        os << "<g id=\"group-" << gi << "\" data-group=\"" << detail::xml_escape(layer.group.spec()) << "\">\n";
        if (layer.rays)
            for (auto n : mem)
                os << "<line x1=\"0.000000\" y1=\"0.000000\" x2=\"" << num6(ray_point(table, n, spec).first)
                   << "\" y2=\"" << num6(ray_point(table, n, spec).second) << "\" stroke=\"" << st.ray_stroke
                   << "\" stroke-width=\"" << num6(st.ray_width * sw) << "\"/>\n";
        for (auto n : mem) {
            auto [x, y] = ray_point(table, n, spec);
            os << "<circle class=\"marker\" data-n=\"" << n << "\" cx=\"" << num6(x) << "\" cy=\"" << num6(y)
               << "\" r=\"" << num6(st.marker_radius * sw) << "\" fill=\"" << layer.color << "\"/>\n";
        }
        os << "</g>\n";
    }

    for (std::size_t ai = 0; ai < spec.arms.size(); ++ai) {
        const auto& layer = spec.arms[ai];
        std::vector<std::uint64_t> pts;
        for (auto n : layer.trace.members)
            if (n <= spec.max_n)
                pts.push_back(n);
        if (pts.size() < 2)
            continue;
        os << "<polyline class=\"arm\" data-poly=\"" << detail::xml_escape(layer.trace.poly.str()) << "\" fill=\"none\" stroke=\""
           << layer.color << "\" stroke-width=\"" << num6(st.arm_width * sw) << "\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            os << (i ? " " : "") << pt(pts[i]);
        os << "\"/>\n";
    }

    for (const auto& layer : spec.groups) {
        if (!layer.labels)
            continue;
        for (auto n : members(layer.group, spec.max_n)) {
            auto [x, y] = ray_point(table, n, spec);
            os << "<text x=\"" << num6(x) << "\" y=\"" << num6(y) << "\" font-size=\"" << num6(st.font_size * sw)
               << "\" fill=\"" << st.label_color << "\">" << n << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

struct figure_spec {
    double width = 640;
    double height = 400;
    std::string stroke = "#1f77b4";
    std::string limit_stroke = "#d62728";
};

// Line chart of a series with its claimed limit as a dashed horizontal rule.
// The x range spans the indices and the y range spans the values and the
// limit, each padded by 5%.
inline std::string render_report_figure(const analysis_series& s, const figure_spec& fig = {})
{
    using detail::num6;
    if (s.empty())
        throw std::invalid_argument("render_report_figure: empty series, nothing to plot");
    double x0 = double(s.terms.front().first), x1 = double(s.terms.back().first);
    double y0 = s.terms.front().second, y1 = y0;
    for (const auto& [i, v] : s.terms) {
        y0 = std::min(y0, v);
        y1 = std::max(y1, v);
    }
    if (s.claimed_limit) {
        y0 = std::min(y0, *s.claimed_limit);
        y1 = std::max(y1, *s.claimed_limit);
    }
    auto pad = [](double& lo, double& hi) {
        double span = hi - lo;
        if (span == 0)
            span = lo == 0 ? 1.0 : std::abs(lo) * 0.1;
        lo -= 0.05 * span;
        hi += 0.05 * span;
    };
    pad(x0, x1);
    pad(y0, y1);

    const double left = 70, right = 20, top = 30, bottom = 40;
    const double pw = fig.width - left - right, ph = fig.height - top - bottom;
    auto X = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto Y = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num6(fig.width) << "\" height=\""
       << num6(fig.height) << "\" viewBox=\"0 0 " << num6(fig.width) << ' ' << num6(fig.height) << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << num6(fig.width) << "\" height=\"" << num6(fig.height)
       << "\" fill=\"#ffffff\"/>\n";
    os << "<text x=\"" << num6(left) << "\" y=\"20.000000\" font-size=\"14\">" << detail::xml_escape(s.label)
       << "</text>\n";
    os << "<g id=\"axes\" data-x-range=\"" << num6(x0) << ' ' << num6(x1) << "\" data-y-range=\"" << num6(y0) << ' '
       << num6(y1) << "\" stroke=\"#000000\" stroke-width=\"1\">\n"
       << "<line x1=\"" << num6(left) << "\" y1=\"" << num6(top + ph) << "\" x2=\"" << num6(left + pw) << "\" y2=\""
       << num6(top + ph) << "\"/>\n"
       << "<line x1=\"" << num6(left) << "\" y1=\"" << num6(top) << "\" x2=\"" << num6(left) << "\" y2=\""
       << num6(top + ph) << "\"/>\n</g>\n";
    os << "<g id=\"ticks\" font-size=\"11\">\n"
       << "<text x=\"" << num6(left - 4) << "\" y=\"" << num6(top + 4) << "\" text-anchor=\"end\">" << num6(y1)
       << "</text>\n"
       << "<text x=\"" << num6(left - 4) << "\" y=\"" << num6(top + ph) << "\" text-anchor=\"end\">" << num6(y0)
       << "</text>\n"
       << "<text x=\"" << num6(left) << "\" y=\"" << num6(top + ph + 16) << "\">" << num6(x0) << "</text>\n"
       << "<text x=\"" << num6(left + pw) << "\" y=\"" << num6(top + ph + 16) << "\" text-anchor=\"end\">"
       << num6(x1) << "</text>\n</g>\n";
    if (s.claimed_limit)
        os << "<line id=\"limit\" data-value=\"" << num6(*s.claimed_limit) << "\" x1=\"" << num6(left) << "\" y1=\""
           << num6(Y(*s.claimed_limit)) << "\" x2=\"" << num6(left + pw) << "\" y2=\"" << num6(Y(*s.claimed_limit))
           << "\" stroke=\"" << fig.limit_stroke << "\" stroke-dasharray=\"6 4\"/>\n";
    if (s.terms.size() == 1) {
        os << "<circle class=\"point\" cx=\"" << num6(X(double(s.terms[0].first))) << "\" cy=\""
           << num6(Y(s.terms[0].second)) << "\" r=\"3.000000\" fill=\"" << fig.stroke << "\"/>\n";
    } else {
        os << "<polyline id=\"series\" fill=\"none\" stroke=\"" << fig.stroke << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.terms.size(); ++i)
            os << (i ? " " : "") << num6(X(double(s.terms[i].first))) << ',' << num6(Y(s.terms[i].second));
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

inline void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw io_error("cannot open " + path + " for writing");
    os << text;
    os.flush();
    if (!os)
        throw io_error("write failed on " + path);
}

} // namespace sqspiral
