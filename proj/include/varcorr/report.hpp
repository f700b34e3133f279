#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "varcorr/correlation.hpp"
#include "varcorr/errors.hpp"
#include "varcorr/format.hpp"

namespace varcorr {

// Human label for a waiting period of k return intervals at frequency f.
// Falls back to the raw count for levels outside the trading-calendar map.
inline std::string waiting_period_label(Frequency f, long k) {
    if (f == Frequency::Daily) {
        switch (k) {
        case 5:   return "1 week";
        case 22:  return "1 month";
        case 65:  return "1 quarter";
        case 130: return "1 semester";
        case 260: return "1 year";
        case 520: return "2 years";
        default:  return std::to_string(k) + " days";
        }
    }
    switch (k) {
    case 4:  return "1 month";
    case 13: return "1 quarter";
    case 26: return "1 semester";
    case 52: return "1 year";
    default: return std::to_string(k) + " weeks";
    }
}

namespace detail {

inline std::string percent_2dp(double p) { return fmt_fixed(100.0 * p, 2) + "%"; }

inline std::string rho_3dp(const ImpliedCorrelationPoint& pt) {
    std::string s = fmt_fixed(pt.rho, 3);
    if (!pt.in_range) s += "*";
    return s;
}

inline std::string pad_right(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

inline std::string pad_left(std::string s, std::size_t width) {
    if (s.size() < width) s.insert(0, width - s.size(), ' ');
    return s;
}

inline std::string weight_pair_header(double w1, double w2) {
    return "(" + fmt_general(w1 * 100.0, 4) + "%, " + fmt_general(w2 * 100.0, 4) + "%)";
}

} // namespace detail

// Machine-readable form, one row per grid point in grid order.
inline std::string surface_to_csv(const CorrelationSurface& surface) {
    std::string out = "probability,waiting_period,w1,w2,position,rho,in_range\n";
    for (const auto& pt : surface.points) {
        out += detail::fmt_general(pt.p.p, 10);
        out += ',';
        if (pt.p.waiting_periods) out += std::to_string(*pt.p.waiting_periods);
        out += ',';
        out += detail::fmt_general(pt.spec.w1, 10);
        out += ',';
        out += detail::fmt_general(pt.spec.w2, 10);
        out += ',';
        out += position_name(pt.spec.position);
        out += ',';
        out += detail::fmt_general(pt.rho, 10);
        out += ',';
        out += pt.in_range ? "true" : "false";
        out += '\n';
    }
    return out;
}

// Fixed-width table: one row per probability level, one Long/Short column
// pair per portfolio weighting. Values outside [-1,1] carry a '*' marker.
inline std::string surface_to_text(const CorrelationSurface& surface,
                                   const std::string& title) {
    std::vector<double> levels;                 // first-appearance order
    std::vector<std::pair<double, double>> weights;
    std::map<std::tuple<double, double, int>, std::string> cells;
    bool any_marker = false;

    for (const auto& pt : surface.points) {
        if (std::find(levels.begin(), levels.end(), pt.p.p) == levels.end())
            levels.push_back(pt.p.p);
        const std::pair<double, double> w{pt.spec.w1, pt.spec.w2};
        if (std::find(weights.begin(), weights.end(), w) == weights.end())
            weights.push_back(w);
        cells[{pt.p.p, pt.spec.w1, static_cast<int>(pt.spec.position)}] =
            detail::rho_3dp(pt);
        any_marker = any_marker || !pt.in_range;
    }

    std::vector<std::string> row_labels;
    std::size_t label_width = std::string("Probability (waiting period)").size();
    for (double p : levels) {
        std::string label = detail::percent_2dp(p);
        for (const auto& pt : surface.points)
            if (pt.p.p == p && pt.p.waiting_periods) {
                label += " (" + waiting_period_label(surface.frequency,
                                                     *pt.p.waiting_periods) + ")";
                break;
            }
        label_width = std::max(label_width, label.size());
        row_labels.push_back(label);
    }

    constexpr std::size_t cell = 9;
    std::string out = title;
    out += '\n';
    out += "Pearson correlation: " + detail::fmt_fixed(surface.pearson, 3) + "\n\n";

    std::string head1 = detail::pad_right("Probability (waiting period)", label_width);
    std::string head2 = detail::pad_right("", label_width);
    for (const auto& w : weights) {
        head1 += "  " + detail::pad_left(detail::weight_pair_header(w.first, w.second),
                                         2 * cell);
        head2 += "  " + detail::pad_left("Long", cell) + detail::pad_left("Short", cell);
    }
    out += head1 + '\n' + head2 + '\n';

    for (std::size_t i = 0; i < levels.size(); ++i) {
        std::string row = detail::pad_right(row_labels[i], label_width);
        for (const auto& w : weights) {
            row += "  ";
            for (Position pos : {Position::Long, Position::Short}) {
                const auto it = cells.find({levels[i], w.first, static_cast<int>(pos)});
                row += detail::pad_left(it == cells.end() ? "-" : it->second, cell);
            }
        }
        out += row + '\n';
    }
    if (any_marker) out += "\n* outside [-1, 1]\n";
    return out;
}

// Line chart of implied correlation against the waiting period, one polyline
// per position side. The surface must cover a single portfolio weighting.
inline std::string figure_to_svg(const CorrelationSurface& surface,
                                 const std::string& title) {
    if (surface.points.empty())
        fail(errc::invalid_config, "figure requires a non-empty surface");
    const double w1 = surface.points.front().spec.w1;
    for (const auto& pt : surface.points)
        if (pt.spec.w1 != w1)
            fail(errc::invalid_config, "figure requires a single portfolio weighting");

    std::vector<double> levels;
    for (const auto& pt : surface.points)
        if (std::find(levels.begin(), levels.end(), pt.p.p) == levels.end())
            levels.push_back(pt.p.p);
    std::sort(levels.begin(), levels.end());

    double lo = 0.0, hi = 1.0;
    for (const auto& pt : surface.points) {
        lo = std::min(lo, pt.rho);
        hi = std::max(hi, pt.rho);
    }
    lo = std::floor(lo * 10.0) / 10.0;
    hi = std::ceil(hi * 10.0) / 10.0;

    constexpr double width = 720.0, height = 440.0;
    constexpr double ml = 64.0, mr = 24.0, mt = 48.0, mb = 72.0;
    const double plot_w = width - ml - mr;
    const double plot_h = height - mt - mb;
    const double xstep = levels.size() > 1 ? plot_w / double(levels.size() - 1) : 0.0;

    auto x_at = [&](double p) {
        const auto i = std::find(levels.begin(), levels.end(), p) - levels.begin();
        return levels.size() > 1 ? ml + double(i) * xstep : ml + plot_w / 2.0;
    };
    auto y_at = [&](double rho) { return mt + (hi - rho) / (hi - lo) * plot_h; };
    auto num = [](double v) { return detail::fmt_fixed(v, 2); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"440\" "
           "viewBox=\"0 0 720 440\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"720\" height=\"440\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(width / 2.0) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-size=\"15\">" + title + "</text>\n";

    // horizontal grid and y labels every 0.1
    for (double v = lo; v <= hi + 1e-9; v += 0.1) {
        const double y = y_at(v);
        svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(y) + "\" x2=\"" +
               num(ml + plot_w) + "\" y2=\"" + num(y) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + num(ml - 8.0) + "\" y=\"" + num(y + 4.0) +
               "\" text-anchor=\"end\">" + detail::fmt_fixed(v, 1) + "</text>\n";
    }

    // x tick labels: waiting-period names where known, else the percent level
    for (double p : levels) {
        std::string label = detail::percent_2dp(p);
        for (const auto& pt : surface.points)
            if (pt.p.p == p && pt.p.waiting_periods) {
                label = waiting_period_label(surface.frequency, *pt.p.waiting_periods);
                break;
            }
        svg += "<text x=\"" + num(x_at(p)) + "\" y=\"" + num(mt + plot_h + 20.0) +
               "\" text-anchor=\"middle\">" + label + "</text>\n";
    }

    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) +
           "\" y2=\"" + num(mt + plot_h) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt + plot_h) + "\" x2=\"" +
           num(ml + plot_w) + "\" y2=\"" + num(mt + plot_h) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    const char* colors[] = {"#1f77b4", "#d62728"};
    const char* names[] = {"Long", "Short"};
    for (Position pos : {Position::Long, Position::Short}) {
        std::vector<std::pair<double, double>> pts; // (p, rho) sorted by p
        for (double p : levels)
            for (const auto& pt : surface.points)
                if (pt.p.p == p && pt.spec.position == pos)
                    pts.emplace_back(p, pt.rho);
        if (pts.empty()) continue;
        const int ci = pos == Position::Long ? 0 : 1;
        std::string coords;
        for (const auto& [p, rho] : pts) {
            if (!coords.empty()) coords += ' ';
            coords += num(x_at(p)) + "," + num(y_at(rho));
        }
        svg += std::string("<polyline fill=\"none\" stroke=\"") + colors[ci] +
               "\" stroke-width=\"2\" points=\"" + coords + "\"/>\n";
        for (const auto& [p, rho] : pts)
            svg += std::string("<circle cx=\"") + num(x_at(p)) + "\" cy=\"" +
                   num(y_at(rho)) + "\" r=\"3\" fill=\"" + colors[ci] + "\"/>\n";
        const double ly = mt + plot_h + 48.0;
        const double lx = ml + (pos == Position::Long ? 0.0 : 120.0);
        svg += std::string("<rect x=\"") + num(lx) + "\" y=\"" + num(ly - 10.0) +
               "\" width=\"24\" height=\"4\" fill=\"" + colors[ci] + "\"/>\n";
        svg += std::string("<text x=\"") + num(lx + 32.0) + "\" y=\"" + num(ly - 4.0) +
               "\">" + names[ci] + "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace varcorr
