#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "varcorr/errors.hpp"
#include "varcorr/format.hpp"
#include "varcorr/series.hpp"

namespace varcorr {

// Average waiting time between VaR exceedances, in trading-calendar units.
enum class WaitingPeriod { Week, Month, Quarter, Semester, Year, TwoYears };

inline const char* waiting_period_name(WaitingPeriod wp) {
    switch (wp) {
    case WaitingPeriod::Week:     return "1 week";
    case WaitingPeriod::Month:    return "1 month";
    case WaitingPeriod::Quarter:  return "1 quarter";
    case WaitingPeriod::Semester: return "1 semester";
    case WaitingPeriod::Year:     return "1 year";
    case WaitingPeriod::TwoYears: return "2 years";
    }
    return "";
}

// VaR confidence level. When built from a waiting period of k return
// intervals, p = 1 - 1/k holds by construction and k is kept as annotation.
struct ProbabilityLevel {
    double p;
    std::optional<long> waiting_periods;

    explicit ProbabilityLevel(double p_) : p(p_) {
        if (!(p > 0.0 && p < 1.0))
            fail(errc::invalid_config, "probability level must lie in (0,1)");
    }

    static ProbabilityLevel from_waiting(long k) {
        if (k < 2)
            fail(errc::invalid_config, "waiting period must span at least 2 intervals");
        ProbabilityLevel level(1.0 - 1.0 / static_cast<double>(k));
        level.waiting_periods = k;
        return level;
    }
};

// Maps (frequency, waiting period) onto the trading-calendar constants:
// 5/22/65/130/260/520 days, 4/13/26/52 weeks. These are fixed; the resulting
// probability grid (80%, 95.45%, ... daily; 75%, 92.31%, ... weekly) depends
// on them exactly.
inline ProbabilityLevel waiting_period_to_probability(Frequency f, WaitingPeriod wp) {
    long k = 0;
    if (f == Frequency::Daily) {
        switch (wp) {
        case WaitingPeriod::Week:     k = 5; break;
        case WaitingPeriod::Month:    k = 22; break;
        case WaitingPeriod::Quarter:  k = 65; break;
        case WaitingPeriod::Semester: k = 130; break;
        case WaitingPeriod::Year:     k = 260; break;
        case WaitingPeriod::TwoYears: k = 520; break;
        }
    } else {
        switch (wp) {
        case WaitingPeriod::Month:    k = 4; break;
        case WaitingPeriod::Quarter:  k = 13; break;
        case WaitingPeriod::Semester: k = 26; break;
        case WaitingPeriod::Year:     k = 52; break;
        default: break;
        }
    }
    if (k == 0)
        fail(errc::unsupported_combination,
             std::string(frequency_name(f)) + " frequency has no '" +
                 waiting_period_name(wp) + "' level");
    return ProbabilityLevel::from_waiting(k);
}

namespace detail {

// Order-statistic rank k = ceil(n*q), 1-based. Products that sit within a
// relative 1e-9 of an integer are snapped first: grid levels like q = 1/22
// are not exactly representable, and without the snap ceil() would step one
// rank too far exactly on the multiples the grid is built from.
inline std::size_t quantile_rank(std::size_t n, double q) {
    double nq = static_cast<double>(n) * q;
    const double nearest = std::round(nq);
    if (std::fabs(nq - nearest) <= 1e-9 * std::max(1.0, std::fabs(nq)))
        nq = nearest;
    double k = std::ceil(nq);
    if (k < 1.0) k = 1.0;
    if (k > static_cast<double>(n)) k = static_cast<double>(n);
    return static_cast<std::size_t>(k);
}

// Expected tail observations n*(1-p), snapped the same way so that e.g.
// n = 520 at p = 1 - 1/520 counts as exactly one.
inline double tail_observations(std::size_t n, double p) {
    const double t = static_cast<double>(n) * (1.0 - p);
    const double nearest = std::round(t);
    if (std::fabs(t - nearest) <= 1e-9 * std::max(1.0, std::fabs(t)))
        return nearest;
    return t;
}

} // namespace detail

// The k-th ascending order statistic with k = ceil(n*q). No interpolation:
// the estimate is always an observed value, which keeps it exactly
// equivariant under positive scaling.
inline double empirical_quantile(std::span<const double> sample, double q) {
    if (sample.empty())
        fail(errc::insufficient_sample, "quantile of an empty sample");
    if (!(q > 0.0 && q < 1.0))
        fail(errc::invalid_config, "quantile level must lie in (0,1)");
    const std::size_t k = detail::quantile_rank(sample.size(), q);
    std::vector<double> work(sample.begin(), sample.end());
    std::nth_element(work.begin(), work.begin() + (k - 1), work.end());
    return work[k - 1];
}

enum class VarMethod { PortfolioQuantile, Aggregated };

// A positive loss magnitude at probability level p, in return units.
struct VarEstimate {
    double value;
    ProbabilityLevel p;
    Position position;
    VarMethod method;
    std::size_t n_obs;
};

// Historical-simulation VaR. Long positions read the lower tail of the
// return distribution, short positions the upper tail. The short side is
// evaluated as the long side of the sign-flipped sample, so
// historical_var(r, p, Short) == historical_var(-r, p, Long) holds exactly
// for every sample, including the ranks where n*(1-p) is an integer.
inline VarEstimate historical_var(const ReturnSeries& r, const ProbabilityLevel& p,
                                  Position position) {
    const std::size_t n = r.size();
    if (detail::tail_observations(n, p.p) < 1.0)
        fail(errc::insufficient_sample,
             "n = " + std::to_string(n) + " leaves no tail observation at p = " +
                 detail::fmt_general(p.p, 6) + " (need n*(1-p) >= 1)");

    double value = 0.0;
    if (position == Position::Long) {
        value = std::max(0.0, -empirical_quantile(r.values, 1.0 - p.p));
    } else {
        std::vector<double> flipped(r.values);
        for (double& x : flipped) x = -x;
        value = std::max(0.0, -empirical_quantile(flipped, 1.0 - p.p));
    }
    return VarEstimate{value, p, position, VarMethod::PortfolioQuantile, n};
}

} // namespace varcorr
