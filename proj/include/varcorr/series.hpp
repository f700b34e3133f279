#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "varcorr/date.hpp"
#include "varcorr/errors.hpp"

namespace varcorr {

enum class Frequency { Daily, Weekly };

inline const char* frequency_name(Frequency f) {
    return f == Frequency::Daily ? "daily" : "weekly";
}

// Side of the exposure: a long position loses when prices fall, a short
// position loses when prices rise.
enum class Position { Long, Short };

inline const char* position_name(Position p) {
    return p == Position::Long ? "long" : "short";
}

// Dated closing price levels for one asset. Dates strictly increasing,
// prices strictly positive. Stored as parallel arrays.
struct PriceSeries {
    std::string asset_id;
    std::vector<Date> dates;
    std::vector<double> closes;

    std::size_t size() const { return dates.size(); }
};

inline void check_price_series(const PriceSeries& p) {
    if (p.dates.size() != p.closes.size())
        fail(errc::invalid_config, "price series arrays differ in length");
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!is_valid(p.dates[i]))
            fail(errc::invalid_config, "invalid date in series '" + p.asset_id + "'");
        if (!(p.closes[i] > 0.0))
            fail(errc::invalid_config, "non-positive price in series '" + p.asset_id + "'");
        if (i > 0 && !(p.dates[i - 1] < p.dates[i]))
            fail(errc::invalid_config, "dates not strictly increasing in series '" +
                                           p.asset_id + "'");
    }
}

// Aligned simple returns at a stated frequency, dated by the later
// observation of each pair.
struct ReturnSeries {
    std::string asset_id;
    Frequency frequency = Frequency::Daily;
    std::vector<Date> dates;
    std::vector<double> values;

    std::size_t size() const { return dates.size(); }
};

// Two-asset allocation. Weights live in (0,1) and sum to one; the position
// side applies to the whole portfolio and is consumed at VaR time, not here.
struct PortfolioSpec {
    double w1;
    double w2;
    Position position;

    PortfolioSpec(double w1_, double w2_, Position pos) : w1(w1_), w2(w2_), position(pos) {
        if (!(w1 > 0.0 && w1 < 1.0) || !(w2 > 0.0 && w2 < 1.0))
            fail(errc::invalid_config, "portfolio weights must lie in (0,1)");
        if (std::fabs(w1 + w2 - 1.0) > 1e-12)
            fail(errc::invalid_config, "portfolio weights must sum to 1");
    }
};

// Intersection of trading dates. Holiday calendars differ across markets, so
// observations without a counterpart on the other side are dropped.
inline std::pair<PriceSeries, PriceSeries> align(const PriceSeries& a, const PriceSeries& b) {
    if (a.size() == 0 || b.size() == 0)
        fail(errc::empty_series, "align requires non-empty series");
    PriceSeries oa{a.asset_id, {}, {}};
    PriceSeries ob{b.asset_id, {}, {}};
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a.dates[i] < b.dates[j]) {
            ++i;
        } else if (b.dates[j] < a.dates[i]) {
            ++j;
        } else {
            oa.dates.push_back(a.dates[i]);
            oa.closes.push_back(a.closes[i]);
            ob.dates.push_back(b.dates[j]);
            ob.closes.push_back(b.closes[j]);
            ++i;
            ++j;
        }
    }
    if (oa.size() == 0)
        fail(errc::empty_intersection,
             "series '" + a.asset_id + "' and '" + b.asset_id + "' share no dates");
    return {std::move(oa), std::move(ob)};
}

// Simple (arithmetic) returns: r_t = close_t / close_{t-1} - 1. Simple
// returns are what make the weighted portfolio identity exact.
inline ReturnSeries to_returns(const PriceSeries& p, Frequency frequency = Frequency::Daily) {
    if (p.size() < 2)
        fail(errc::too_short_series,
             "series '" + p.asset_id + "' needs at least 2 observations for returns");
    ReturnSeries out{p.asset_id, frequency, {}, {}};
    out.dates.reserve(p.size() - 1);
    out.values.reserve(p.size() - 1);
    for (std::size_t t = 1; t < p.size(); ++t) {
        out.dates.push_back(p.dates[t]);
        out.values.push_back(p.closes[t] / p.closes[t - 1] - 1.0);
    }
    return out;
}

// Last available close per ISO week. A missing Friday falls back to the
// latest session actually traded in that week.
inline PriceSeries resample_weekly(const PriceSeries& p) {
    if (p.size() < 2)
        fail(errc::too_short_series,
             "series '" + p.asset_id + "' needs at least 2 observations to resample");
    PriceSeries out{p.asset_id, {}, {}};
    for (std::size_t i = 0; i < p.size(); ++i) {
        const bool last_of_week =
            i + 1 == p.size() || iso_week(p.dates[i]) != iso_week(p.dates[i + 1]);
        if (last_of_week) {
            out.dates.push_back(p.dates[i]);
            out.closes.push_back(p.closes[i]);
        }
    }
    return out;
}

// Weighted portfolio return: w1*r1 + w2*r2 per date. The position side does
// not enter here; it selects the distribution tail at VaR time.
inline ReturnSeries portfolio_returns(const ReturnSeries& r1, const ReturnSeries& r2,
                                      const PortfolioSpec& spec) {
    if (r1.frequency != r2.frequency)
        fail(errc::frequency_mismatch, "portfolio legs have different frequencies");
    if (r1.dates != r2.dates)
        fail(errc::date_mismatch, "portfolio legs are not date-aligned");
    ReturnSeries out{r1.asset_id + "+" + r2.asset_id, r1.frequency, r1.dates, {}};
    out.values.reserve(r1.size());
    for (std::size_t t = 0; t < r1.size(); ++t)
        out.values.push_back(spec.w1 * r1.values[t] + spec.w2 * r2.values[t]);
    return out;
}

// Inverse of to_returns up to the base level: turns a return series into a
// synthetic price path starting at `base` one period before the first return.
inline PriceSeries to_price_series(const ReturnSeries& r, double base = 100.0) {
    if (!(base > 0.0)) fail(errc::invalid_config, "base price must be positive");
    if (r.size() == 0) fail(errc::empty_series, "cannot build prices from empty returns");
    PriceSeries out{r.asset_id, {}, {}};
    out.dates.reserve(r.size() + 1);
    out.closes.reserve(r.size() + 1);
    const long step = r.frequency == Frequency::Weekly ? 7 : 1;
    out.dates.push_back(advance_days(r.dates.front(), -step));
    out.closes.push_back(base);
    double level = base;
    for (std::size_t t = 0; t < r.size(); ++t) {
        level *= 1.0 + r.values[t];
        if (!(level > 0.0))
            fail(errc::invalid_config, "return of -100% or worse cannot be priced");
        out.dates.push_back(r.dates[t]);
        out.closes.push_back(level);
    }
    return out;
}

} // namespace varcorr
