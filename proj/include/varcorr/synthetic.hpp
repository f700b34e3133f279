#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "varcorr/errors.hpp"
#include "varcorr/series.hpp"

namespace varcorr {

enum class Regime { Gaussian, CrashMixture };

// Seeded bivariate return generator. The stream is mt19937_64 (bit-exact by
// the standard), uniforms use the fixed 53-bit mapping below, and normals go
// through a rational inverse-CDF approximation, so identical configs give
// identical series on any platform and exactly two (Gaussian regime) or
// three (mixture regime) draws are consumed per observation.
struct GeneratorConfig {
    std::uint64_t seed = 1;
    std::size_t n = 10'000;
    double rho = 0.0;
    double sigma1 = 0.01;
    double sigma2 = 0.01;
    double mu1 = 0.0;
    double mu2 = 0.0;
    Regime regime = Regime::Gaussian;
    double crash_prob = 0.0;   // mixture weight of the crash component
    double crash_rho = 0.0;    // correlation inside the crash component
    double crash_shift = 0.0;  // <= 0, added to both means in a crash
};

namespace detail {

// Uniform in the open interval (0,1): top 53 bits of the engine output,
// centered so 0 and 1 are unreachable. One engine call per variate.
inline double uniform_open(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

} // namespace detail

// Inverse standard normal CDF, Wichura's algorithm AS 241 (PPND16 variant).
// Pure rational approximations, accurate to ~1e-16 relative; no libm calls
// beyond sqrt/log, so results are reproducible across toolchains.
inline double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0))
        fail(errc::invalid_config, "inverse_normal_cdf requires p in (0,1)");

    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }

    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -x : x;
}

namespace detail {

inline void check_generator_config(const GeneratorConfig& cfg) {
    if (cfg.n == 0) fail(errc::invalid_config, "sample size must be positive");
    if (!(cfg.sigma1 > 0.0) || !(cfg.sigma2 > 0.0))
        fail(errc::invalid_config, "volatilities must be positive");
    if (!(cfg.rho >= -1.0 && cfg.rho <= 1.0))
        fail(errc::invalid_config, "rho must lie in [-1,1]");
    if (cfg.regime == Regime::CrashMixture) {
        if (!(cfg.crash_prob >= 0.0 && cfg.crash_prob < 1.0))
            fail(errc::invalid_config, "crash_prob must lie in [0,1)");
        if (!(cfg.crash_rho >= -1.0 && cfg.crash_rho <= 1.0))
            fail(errc::invalid_config, "crash_rho must lie in [-1,1]");
        if (cfg.crash_shift > 0.0)
            fail(errc::invalid_config, "crash_shift must be <= 0");
    }
}

constexpr Date kSyntheticStart{2000, 1, 3};

// Shared core: per observation, optionally one mixture draw, then two
// normals correlated via z2' = rho*z1 + sqrt(1-rho^2)*z2.
inline std::pair<ReturnSeries, ReturnSeries> generate(const GeneratorConfig& cfg,
                                                      bool mixture) {
    std::mt19937_64 rng(cfg.seed);
    ReturnSeries r1{"synthetic1", Frequency::Daily, {}, {}};
    ReturnSeries r2{"synthetic2", Frequency::Daily, {}, {}};
    r1.dates.reserve(cfg.n);
    r1.values.reserve(cfg.n);
    r2.dates.reserve(cfg.n);
    r2.values.reserve(cfg.n);

    const double base_tail = std::sqrt(1.0 - cfg.rho * cfg.rho);
    const double crash_tail = std::sqrt(1.0 - cfg.crash_rho * cfg.crash_rho);

    for (std::size_t i = 0; i < cfg.n; ++i) {
        bool crash = false;
        if (mixture) crash = uniform_open(rng) < cfg.crash_prob;

        const double z1 = inverse_normal_cdf(uniform_open(rng));
        const double z2 = inverse_normal_cdf(uniform_open(rng));
        const double rho = crash ? cfg.crash_rho : cfg.rho;
        const double tail = crash ? crash_tail : base_tail;
        const double shift = crash ? cfg.crash_shift : 0.0;
        const double e2 = rho * z1 + tail * z2;

        const Date date = advance_days(kSyntheticStart, static_cast<long>(i));
        r1.dates.push_back(date);
        r1.values.push_back(cfg.mu1 + shift + cfg.sigma1 * z1);
        r2.dates.push_back(date);
        r2.values.push_back(cfg.mu2 + shift + cfg.sigma2 * e2);
    }
    return {std::move(r1), std::move(r2)};
}

} // namespace detail

inline std::pair<ReturnSeries, ReturnSeries> gen_bivariate_gaussian(const GeneratorConfig& cfg) {
    if (cfg.regime != Regime::Gaussian)
        fail(errc::invalid_config, "gen_bivariate_gaussian requires the gaussian regime");
    detail::check_generator_config(cfg);
    return detail::generate(cfg, false);
}

// Two-component mixture: the base Gaussian regime, plus a crash component
// drawn with probability crash_prob that correlates at crash_rho and shifts
// both means by crash_shift. crash_prob = 0 degenerates to the plain
// Gaussian generator on the identical draw stream.
inline std::pair<ReturnSeries, ReturnSeries> gen_crash_mixture(const GeneratorConfig& cfg) {
    if (cfg.regime != Regime::CrashMixture)
        fail(errc::invalid_config, "gen_crash_mixture requires the crash_mixture regime");
    detail::check_generator_config(cfg);
    if (cfg.crash_prob == 0.0) return detail::generate(cfg, false);
    return detail::generate(cfg, true);
}

} // namespace varcorr
