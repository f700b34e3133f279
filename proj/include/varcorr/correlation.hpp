#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "varcorr/errors.hpp"
#include "varcorr/format.hpp"
#include "varcorr/series.hpp"
#include "varcorr/var.hpp"

namespace varcorr {

// Correlation backed out of a VaR pair at one grid point. rho is reported as
// computed: empirical values can leave [-1,1], and that excursion is signal,
// so it is flagged via in_range rather than clamped away.
struct ImpliedCorrelationPoint {
    double rho;
    Frequency frequency;
    ProbabilityLevel p;
    PortfolioSpec spec;
    bool in_range;
};

struct GridPoint {
    ProbabilityLevel p;
    PortfolioSpec spec;
};

// Implied-correlation values over a (probability, portfolio) grid at one
// frequency, with the full-sample Pearson coefficient as reference.
struct CorrelationSurface {
    Frequency frequency;
    std::vector<ImpliedCorrelationPoint> points;
    double pearson;
};

namespace detail {

inline void require_same_level(const VarEstimate& a, const VarEstimate& b,
                               const char* who) {
    if (a.p.p != b.p.p || a.position != b.position)
        fail(errc::mismatched_inputs,
             std::string(who) + " requires VaR inputs at the same probability "
                                "level and position");
}

inline std::string describe(const GridPoint& g) {
    return "p=" + fmt_general(g.p.p, 6) + " w1=" + fmt_general(g.spec.w1, 6) + " " +
           position_name(g.spec.position);
}

} // namespace detail

// Variance-covariance aggregation of two VaR magnitudes:
//   sqrt(w1^2 v1^2 + w2^2 v2^2 + 2 w1 w2 rho v1 v2).
// The quadratic form keeps the radicand non-negative for any rho >= -1.
inline VarEstimate aggregate_var(const VarEstimate& v1, const VarEstimate& v2,
                                 const PortfolioSpec& spec, double rho) {
    detail::require_same_level(v1, v2, "aggregate_var");
    if (!(rho >= -1.0 && rho <= 1.0))
        fail(errc::invalid_config, "correlation must lie in [-1,1]");
    const double a = spec.w1 * v1.value;
    const double b = spec.w2 * v2.value;
    const double radicand = std::max(0.0, a * a + b * b + 2.0 * rho * a * b);
    return VarEstimate{std::sqrt(radicand), v1.p, v1.position, VarMethod::Aggregated,
                       std::min(v1.n_obs, v2.n_obs)};
}

// Exact inverse of aggregate_var in rho:
//   rho = (v_port^2 - w1^2 v1^2 - w2^2 v2^2) / (2 w1 w2 v1 v2).
// Both component VaRs must be strictly positive or the denominator vanishes;
// that case surfaces as degenerate-var instead of a NaN.
inline ImpliedCorrelationPoint implied_correlation(const VarEstimate& v_port,
                                                   const VarEstimate& v1,
                                                   const VarEstimate& v2,
                                                   const PortfolioSpec& spec,
                                                   Frequency frequency = Frequency::Daily) {
    detail::require_same_level(v1, v2, "implied_correlation");
    detail::require_same_level(v_port, v1, "implied_correlation");
    if (!(v1.value > 0.0) || !(v2.value > 0.0))
        fail(errc::degenerate_var,
             "component VaR is zero at p = " + detail::fmt_general(v1.p.p, 6) +
                 "; implied correlation is undefined");
    const double a = spec.w1 * v1.value;
    const double b = spec.w2 * v2.value;
    const double rho = (v_port.value * v_port.value - a * a - b * b) / (2.0 * a * b);
    return ImpliedCorrelationPoint{rho, frequency, v_port.p, spec,
                                   rho >= -1.0 && rho <= 1.0};
}

// Sample product-moment correlation of two aligned return series.
inline double pearson_correlation(const ReturnSeries& r1, const ReturnSeries& r2) {
    if (r1.frequency != r2.frequency)
        fail(errc::frequency_mismatch, "pearson_correlation inputs differ in frequency");
    if (r1.dates != r2.dates)
        fail(errc::date_mismatch, "pearson_correlation inputs are not date-aligned");
    const std::size_t n = r1.size();
    if (n < 2)
        fail(errc::insufficient_sample, "pearson_correlation needs at least 2 observations");

    double m1 = 0.0, m2 = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        m1 += r1.values[t];
        m2 += r2.values[t];
    }
    m1 /= static_cast<double>(n);
    m2 /= static_cast<double>(n);

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double dx = r1.values[t] - m1;
        const double dy = r2.values[t] - m2;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        fail(errc::constant_series, "pearson_correlation is undefined for a constant series");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// The reference experiment grid ("paper-grid-daily" / "paper-grid-weekly"):
// every waiting-period level crossed with weights (25,75), (50,50), (75,25)
// and both position sides, in that row-major order.
inline std::vector<GridPoint> paper_grid(Frequency f) {
    std::vector<WaitingPeriod> periods;
    if (f == Frequency::Daily)
        periods = {WaitingPeriod::Week,     WaitingPeriod::Month, WaitingPeriod::Quarter,
                   WaitingPeriod::Semester, WaitingPeriod::Year,  WaitingPeriod::TwoYears};
    else
        periods = {WaitingPeriod::Month, WaitingPeriod::Quarter, WaitingPeriod::Semester,
                   WaitingPeriod::Year};

    const double weights[][2] = {{0.25, 0.75}, {0.5, 0.5}, {0.75, 0.25}};
    std::vector<GridPoint> grid;
    for (WaitingPeriod wp : periods) {
        const ProbabilityLevel level = waiting_period_to_probability(f, wp);
        for (const auto& w : weights)
            for (Position pos : {Position::Long, Position::Short})
                grid.push_back(GridPoint{level, PortfolioSpec(w[0], w[1], pos)});
    }
    return grid;
}

// Evaluates the whole grid: per point, component VaRs and the portfolio VaR
// from the weighted return series, then the implied correlation. Grid order
// is preserved in the output.
inline CorrelationSurface build_surface(const ReturnSeries& r1, const ReturnSeries& r2,
                                        Frequency frequency,
                                        const std::vector<GridPoint>& grid) {
    if (r1.frequency != frequency || r2.frequency != frequency)
        fail(errc::frequency_mismatch, "series frequency does not match the surface frequency");

    std::set<std::tuple<double, double, Position>> seen;
    for (const auto& g : grid)
        if (!seen.insert({g.p.p, g.spec.w1, g.spec.position}).second)
            fail(errc::invalid_config, "duplicate grid point: " + detail::describe(g));

    CorrelationSurface surface{frequency, {}, pearson_correlation(r1, r2)};
    surface.points.reserve(grid.size());
    for (const auto& g : grid) {
        try {
            const VarEstimate v1 = historical_var(r1, g.p, g.spec.position);
            const VarEstimate v2 = historical_var(r2, g.p, g.spec.position);
            const ReturnSeries port = portfolio_returns(r1, r2, g.spec);
            const VarEstimate v_port = historical_var(port, g.p, g.spec.position);
            surface.points.push_back(implied_correlation(v_port, v1, v2, g.spec, frequency));
        } catch (const error& e) {
            fail(e.code(), "grid point " + detail::describe(g) + ": " + e.what());
        }
    }
    return surface;
}

} // namespace varcorr
