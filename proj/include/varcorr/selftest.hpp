#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "varcorr/correlation.hpp"
#include "varcorr/format.hpp"
#include "varcorr/report.hpp"
#include "varcorr/synthetic.hpp"

namespace varcorr {

// Under a bivariate Gaussian the implied correlation is the Pearson
// coefficient no matter the probability level, the weights, or the position
// side. The self-test generates such data and checks every point of the
// daily reference grid against the population value within Monte Carlo
// tolerances: deeper levels rest on fewer tail observations, so they get a
// wider band.
inline constexpr double kConstancyRho = 0.42;
inline constexpr double kConstancyTolShallow = 0.03; // p <= 98.46%
inline constexpr double kConstancyTolDeep = 0.10;    // p >= 99.23%
inline constexpr std::size_t kConstancySampleSize = 500'000;

struct ConstancyPoint {
    double p;
    std::optional<long> waiting_periods;
    double w1;
    Position position;
    double rho;
    double deviation;
    double tolerance;
    bool pass;
};

struct ConstancyReport {
    std::uint64_t seed;
    std::size_t n;
    double target;
    double pearson;
    std::vector<ConstancyPoint> points;
    bool passed;
};

inline ConstancyReport run_gaussian_constancy(std::uint64_t seed,
                                              std::size_t n = kConstancySampleSize) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.n = n;
    cfg.rho = kConstancyRho;
    cfg.sigma1 = cfg.sigma2 = 0.01;
    cfg.mu1 = cfg.mu2 = 0.0;

    const auto [r1, r2] = gen_bivariate_gaussian(cfg);
    const CorrelationSurface surface =
        build_surface(r1, r2, Frequency::Daily, paper_grid(Frequency::Daily));

    ConstancyReport report{seed, n, kConstancyRho, surface.pearson, {}, true};
    for (const auto& pt : surface.points) {
        const double tol = pt.p.p < 0.99 ? kConstancyTolShallow : kConstancyTolDeep;
        const double dev = std::fabs(pt.rho - kConstancyRho);
        const bool ok = dev <= tol;
        report.points.push_back(ConstancyPoint{pt.p.p, pt.p.waiting_periods, pt.spec.w1,
                                               pt.spec.position, pt.rho, dev, tol, ok});
        report.passed = report.passed && ok;
    }
    return report;
}

inline std::string format_constancy_report(const ConstancyReport& report) {
    std::string out;
    out += "gaussian constancy self-test\n";
    out += "seed: " + std::to_string(report.seed) + "  n: " + std::to_string(report.n) +
           "  target rho: " + detail::fmt_fixed(report.target, 3) + "\n";
    out += "sample pearson: " + detail::fmt_fixed(report.pearson, 4) + "\n\n";
    out += "probability  waiting     w1    position  rho       deviation  tolerance  status\n";
    for (const auto& pt : report.points) {
        out += detail::pad_right(detail::percent_2dp(pt.p), 13);
        out += detail::pad_right(pt.waiting_periods
                                     ? waiting_period_label(Frequency::Daily,
                                                            *pt.waiting_periods)
                                     : "-",
                                 12);
        out += detail::pad_right(detail::fmt_fixed(pt.w1, 2), 6);
        out += detail::pad_right(position_name(pt.position), 10);
        out += detail::pad_right(detail::fmt_fixed(pt.rho, 4), 10);
        out += detail::pad_right(detail::fmt_fixed(pt.deviation, 4), 11);
        out += detail::pad_right(detail::fmt_fixed(pt.tolerance, 4), 11);
        out += pt.pass ? "pass" : "FAIL";
        out += '\n';
    }
    std::size_t passed = 0;
    for (const auto& pt : report.points) passed += pt.pass ? 1 : 0;
    out += "\nresult: " + std::string(report.passed ? "PASS" : "FAIL") + " (" +
           std::to_string(passed) + "/" + std::to_string(report.points.size()) +
           " points within tolerance)\n";
    return out;
}

} // namespace varcorr
