// Acceptance suite: runs every shipping criterion end to end and prints one
// PASS/FAIL line each. The index-data criterion is skipped (not failed) when
// no data directory is supplied via VARCORR_DATA_DIR.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "varcorr/varcorr.hpp"

namespace fs = std::filesystem;
using namespace varcorr;

namespace {

int g_failed = 0;
int g_passed = 0;
int g_skipped = 0;

void report(bool pass, const std::string& line) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << line << '\n';
    (pass ? g_passed : g_failed) += 1;
}

void report_skip(const std::string& line) {
    std::cout << "[SKIP] " << line << '\n';
    ++g_skipped;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v, int precision = 3) {
    return detail::fmt_general(v, precision);
}

// 1. aggregate_var followed by implied_correlation recovers rho to 1e-12
//    over 1000 random tuples in under a second.
void criterion_round_trip() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(20240601);
    std::uniform_real_distribution<double> rho_d(-1.0, 1.0);
    std::uniform_real_distribution<double> w_d(0.01, 0.99);
    std::uniform_real_distribution<double> v_d(1e-4, 1.0);
    const ProbabilityLevel p(0.95);

    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const double rho = rho_d(rng);
        const double w1 = w_d(rng);
        const PortfolioSpec spec(w1, 1.0 - w1, Position::Long);
        const VarEstimate v1{v_d(rng), p, Position::Long, VarMethod::PortfolioQuantile, 1000};
        const VarEstimate v2{v_d(rng), p, Position::Long, VarMethod::PortfolioQuantile, 1000};
        const VarEstimate agg = aggregate_var(v1, v2, spec, rho);
        const ImpliedCorrelationPoint pt = implied_correlation(agg, v1, v2, spec);
        worst = std::max(worst, std::fabs(pt.rho - rho));
    }
    const double elapsed = seconds_since(start);
    report(worst <= 1e-12 && elapsed < 1.0,
           "1. round-trip inversion: max |rho_implied - rho| = " + fmt(worst) +
               " (tol 1e-12) over 1000 tuples, " + fmt(elapsed) + "s (limit 1s)");
}

// 2. bivariate gaussian at rho = 0.42, n = 500000: every daily grid point
//    within 0.03 (p <= 98.46%) / 0.10 (p >= 99.23%) of 0.42, seeds 1..3,
//    under 60 s.
void criterion_gaussian_constancy() {
    const auto start = std::chrono::steady_clock::now();
    int ok = 0, total = 0;
    double worst_shallow = 0.0, worst_deep = 0.0;
    for (std::uint64_t seed : {1, 2, 3}) {
        const ConstancyReport r = run_gaussian_constancy(seed);
        for (const auto& pt : r.points) {
            ++total;
            ok += pt.pass ? 1 : 0;
            (pt.p < 0.99 ? worst_shallow : worst_deep) =
                std::max(pt.p < 0.99 ? worst_shallow : worst_deep, pt.deviation);
        }
    }
    const double elapsed = seconds_since(start);
    report(ok == total && elapsed < 60.0,
           "2. gaussian constancy: " + std::to_string(ok) + "/" + std::to_string(total) +
               " grid points within tolerance over seeds 1-3 (worst dev " +
               fmt(worst_shallow) + " shallow / " + fmt(worst_deep) + " deep), " +
               fmt(elapsed) + "s (limit 60s)");
}

// 3. r2 = 2*r1 over 10000 gaussian draws: every daily grid point implies
//    rho = 1 within 1e-9, under 5 s.
void criterion_comonotonic() {
    const auto start = std::chrono::steady_clock::now();
    GeneratorConfig cfg;
    cfg.seed = 7;
    cfg.n = 10'000;
    cfg.rho = 0.0;
    auto [r1, r2] = gen_bivariate_gaussian(cfg);
    r2 = r1;
    r2.asset_id = "doubled";
    for (double& x : r2.values) x *= 2.0;

    const CorrelationSurface surface =
        build_surface(r1, r2, Frequency::Daily, paper_grid(Frequency::Daily));
    double worst = 0.0;
    for (const auto& pt : surface.points) worst = std::max(worst, std::fabs(pt.rho - 1.0));
    const double elapsed = seconds_since(start);
    report(surface.points.size() == 36 && worst <= 1e-9 && elapsed < 5.0,
           "3. comonotonic degeneracy: max |rho - 1| = " + fmt(worst) +
               " (tol 1e-9) over 36 points, " + fmt(elapsed) + "s (limit 5s)");
}

// 4. historical_var(r, p, long) == historical_var(-r, p, short) exactly for
//    100 random series at all six daily levels.
void criterion_sign_symmetry() {
    std::mt19937 rng(99);
    std::uniform_int_distribution<std::size_t> len(521, 3000);
    std::normal_distribution<double> g(0.0001, 0.012);
    const auto grid_levels = {WaitingPeriod::Week,     WaitingPeriod::Month,
                              WaitingPeriod::Quarter,  WaitingPeriod::Semester,
                              WaitingPeriod::Year,     WaitingPeriod::TwoYears};
    int exact = 0, total = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = len(rng);
        ReturnSeries r{"r", Frequency::Daily, {}, {}};
        for (std::size_t i = 0; i < n; ++i) {
            r.dates.push_back(advance_days(Date{1995, 1, 2}, static_cast<long>(i)));
            r.values.push_back(g(rng));
        }
        ReturnSeries neg = r;
        for (double& x : neg.values) x = -x;
        for (WaitingPeriod wp : grid_levels) {
            const ProbabilityLevel p = waiting_period_to_probability(Frequency::Daily, wp);
            ++total;
            exact += historical_var(r, p, Position::Long).value ==
                             historical_var(neg, p, Position::Short).value
                         ? 1
                         : 0;
        }
    }
    report(exact == total, "4. sign symmetry: " + std::to_string(exact) + "/" +
                               std::to_string(total) +
                               " exact equalities over 100 series x 6 levels");
}

// 5. crash mixture (crash_prob 0.05, rho 0.2, crash_rho 0.9, shift -3 sigma):
//    at the two deepest daily levels the long side implies strictly more
//    correlation than the short side, all three weightings, seeds 1..3.
void criterion_crash_asymmetry() {
    int ok = 0, total = 0;
    for (std::uint64_t seed : {1, 2, 3}) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.n = 500'000;
        cfg.rho = 0.2;
        cfg.sigma1 = cfg.sigma2 = 0.01;
        cfg.regime = Regime::CrashMixture;
        cfg.crash_prob = 0.05;
        cfg.crash_rho = 0.9;
        cfg.crash_shift = -0.03; // -3 sigma
        const auto [r1, r2] = gen_crash_mixture(cfg);

        for (WaitingPeriod wp : {WaitingPeriod::Year, WaitingPeriod::TwoYears}) {
            const ProbabilityLevel p = waiting_period_to_probability(Frequency::Daily, wp);
            for (double w1 : {0.25, 0.5, 0.75}) {
                std::vector<GridPoint> pair;
                pair.push_back(GridPoint{p, PortfolioSpec(w1, 1.0 - w1, Position::Long)});
                pair.push_back(GridPoint{p, PortfolioSpec(w1, 1.0 - w1, Position::Short)});
                const CorrelationSurface s = build_surface(r1, r2, Frequency::Daily, pair);
                ++total;
                ok += s.points[0].rho > s.points[1].rho ? 1 : 0;
            }
        }
    }
    report(ok == total, "5. crash-mixture asymmetry: rho(long) > rho(short) at " +
                            std::to_string(ok) + "/" + std::to_string(total) +
                            " deep points over seeds 1-3");
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(VARCORR_CLI_PATH) + " " + args;
    return WEXITSTATUS(std::system(cmd.c_str()));
}

// Pulls one rho out of a table CSV by (probability prefix, w1, position).
bool find_rho(const std::string& csv, const std::string& p_prefix, const std::string& w1,
              const std::string& position, double& rho_out) {
    std::istringstream lines(csv);
    std::string line;
    while (std::getline(lines, line)) {
        std::vector<std::string> fields;
        std::istringstream fs_(line);
        std::string field;
        while (std::getline(fs_, field, ',')) fields.push_back(field);
        if (fields.size() != 7) continue;
        if (fields[0].rfind(p_prefix, 0) == 0 && fields[2] == w1 && fields[4] == position) {
            rho_out = std::strtod(fields[5].c_str(), nullptr);
            return true;
        }
    }
    return false;
}

// 6. supplied S&P 500 / FTSE 100 closes for 1995..2003: daily 50/50 long at
//    99.62% gives 0.516 +/- 0.03 through the table command, and the daily
//    Pearson coefficient is 0.42 +/- 0.01. Skipped without the data.
void criterion_index_data() {
    const char* dir = std::getenv("VARCORR_DATA_DIR");
    if (dir == nullptr) {
        report_skip("6. index-data reproduction: set VARCORR_DATA_DIR to a directory "
                    "with sp500.csv and ftse100.csv to enable");
        return;
    }
    const fs::path sp = fs::path(dir) / "sp500.csv";
    const fs::path ft = fs::path(dir) / "ftse100.csv";
    if (!fs::exists(sp) || !fs::exists(ft)) {
        report_skip("6. index-data reproduction: sp500.csv / ftse100.csv not found in " +
                    std::string(dir));
        return;
    }

    // restrict to the reference window, then run the real CLI on the result
    auto clip = [](const PriceSeries& s) {
        PriceSeries out{s.asset_id, {}, {}};
        for (std::size_t i = 0; i < s.size(); ++i)
            if (Date{1995, 1, 1} <= s.dates[i] && s.dates[i] <= Date{2003, 12, 31}) {
                out.dates.push_back(s.dates[i]);
                out.closes.push_back(s.closes[i]);
            }
        return out;
    };
    const fs::path tmp = fs::temp_directory_path();
    const fs::path sp_clip = tmp / "vc_acc_sp500.csv";
    const fs::path ft_clip = tmp / "vc_acc_ftse100.csv";
    save_csv(clip(load_csv(sp)), sp_clip);
    save_csv(clip(load_csv(ft)), ft_clip);

    const fs::path out = tmp / "vc_acc_table.csv";
    const int code = run_cli("table --format csv --asset1 " + sp_clip.string() +
                             " --asset2 " + ft_clip.string() + " --out " + out.string());
    double rho = 0.0;
    const bool found = code == 0 && find_rho(slurp(out), "0.99615", "0.5", "long", rho);

    const auto [a, b] = align(load_csv(sp_clip), load_csv(ft_clip));
    const double pearson = pearson_correlation(to_returns(a), to_returns(b));

    const bool ok = found && std::fabs(rho - 0.516) <= 0.03 &&
                    std::fabs(pearson - 0.42) <= 0.01;
    report(ok, "6. index-data reproduction: rho(99.62%, 50/50, long) = " + fmt(rho) +
                   " (target 0.516 +/- 0.03), pearson = " + fmt(pearson) +
                   " (target 0.42 +/- 0.01)");
    fs::remove(sp_clip);
    fs::remove(ft_clip);
    fs::remove(out);
}

// 7. table and figure on a fixed synthetic config are byte-identical across
//    two runs.
void criterion_cli_golden() {
    const fs::path tmp = fs::temp_directory_path();
    const fs::path cfg = tmp / "vc_acc_golden.toml";
    {
        std::ofstream out(cfg);
        out << "seed = 20240601\nn = 4000\nrho = 0.42\nsigma1 = 0.01\nsigma2 = 0.012\n"
               "regime = \"gaussian\"\n";
    }
    const fs::path t1 = tmp / "vc_acc_t1.csv", t2 = tmp / "vc_acc_t2.csv";
    const fs::path f1 = tmp / "vc_acc_f1.svg", f2 = tmp / "vc_acc_f2.svg";

    bool ok = true;
    ok &= run_cli("table --format csv --synthetic " + cfg.string() + " --out " +
                  t1.string()) == 0;
    ok &= run_cli("table --format csv --synthetic " + cfg.string() + " --out " +
                  t2.string()) == 0;
    ok &= run_cli("figure --synthetic " + cfg.string() + " --out " + f1.string()) == 0;
    ok &= run_cli("figure --synthetic " + cfg.string() + " --out " + f2.string()) == 0;

    const std::string table_a = slurp(t1), table_b = slurp(t2);
    const std::string fig_a = slurp(f1), fig_b = slurp(f2);
    ok = ok && !table_a.empty() && table_a == table_b && !fig_a.empty() && fig_a == fig_b;
    report(ok, "7. cli golden outputs: table and figure byte-identical across two runs");

    for (const auto& p : {cfg, t1, t2, f1, f2}) fs::remove(p);
}

} // namespace

int main() {
    std::cout << "varcorr acceptance suite\n";
    criterion_round_trip();
    criterion_gaussian_constancy();
    criterion_comonotonic();
    criterion_sign_symmetry();
    criterion_crash_asymmetry();
    criterion_index_data();
    criterion_cli_golden();
    std::cout << "result: " << g_passed << " passed, " << g_failed << " failed, "
              << g_skipped << " skipped\n";
    return g_failed == 0 ? 0 : 1;
}
