// varcorr: historical VaR and implied correlation for two-asset portfolios.
//
// Subcommands:
//   table    implied-correlation grid as text or CSV
//   figure   implied correlation vs waiting period as SVG or CSV
//   selftest gaussian constancy check with per-point deviations
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 tolerance failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "varcorr/varcorr.hpp"

namespace {

using namespace varcorr;

struct CommonOptions {
    std::string asset1;
    std::string asset2;
    std::string synthetic;
    std::string frequency = "daily";
    std::string grid;
    std::vector<std::string> weights;
    std::string position = "both";
    std::string format;
    std::string out;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Frequency parse_frequency(const std::string& s) {
    if (s == "daily") return Frequency::Daily;
    if (s == "weekly") return Frequency::Weekly;
    throw UsageError("--frequency must be 'daily' or 'weekly'");
}

std::pair<double, double> parse_weights(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw UsageError("--weights expects 'w1,w2', e.g. 0.25,0.75");
    double w1 = 0.0, w2 = 0.0;
    if (!detail::parse_double(detail::trim(s.substr(0, comma)), w1) ||
        !detail::parse_double(detail::trim(s.substr(comma + 1)), w2))
        throw UsageError("--weights expects two decimal numbers");
    return {w1, w2};
}

// Flat TOML subset: `key = value` lines, '#' comments, optional quotes.
GeneratorConfig parse_generator_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::file_not_found, "cannot open '" + path + "'");

    GeneratorConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string_view row = detail::trim(line);
        if (row.empty()) continue;
        auto reject = [&](const std::string& why) {
            fail(errc::invalid_config,
                 path + ":" + std::to_string(line_no) + ": " + why);
        };
        if (row.front() == '[') reject("tables are not supported in generator configs");
        const auto eq = row.find('=');
        if (eq == std::string_view::npos) reject("expected 'key = value'");
        const std::string key{detail::trim(row.substr(0, eq))};
        std::string_view value = detail::trim(row.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);

        auto as_double = [&](double& out) {
            if (!detail::parse_double(value, out)) reject("'" + key + "' is not a number");
        };
        if (key == "seed") {
            auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), cfg.seed);
            if (ec != std::errc() || p != value.data() + value.size())
                reject("'seed' is not an unsigned integer");
        } else if (key == "n") {
            auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), cfg.n);
            if (ec != std::errc() || p != value.data() + value.size())
                reject("'n' is not an unsigned integer");
        } else if (key == "rho") {
            as_double(cfg.rho);
        } else if (key == "sigma1") {
            as_double(cfg.sigma1);
        } else if (key == "sigma2") {
            as_double(cfg.sigma2);
        } else if (key == "mu1") {
            as_double(cfg.mu1);
        } else if (key == "mu2") {
            as_double(cfg.mu2);
        } else if (key == "crash_prob") {
            as_double(cfg.crash_prob);
        } else if (key == "crash_rho") {
            as_double(cfg.crash_rho);
        } else if (key == "crash_shift") {
            as_double(cfg.crash_shift);
        } else if (key == "regime") {
            if (value == "gaussian")
                cfg.regime = Regime::Gaussian;
            else if (value == "crash_mixture")
                cfg.regime = Regime::CrashMixture;
            else
                reject("'regime' must be 'gaussian' or 'crash_mixture'");
        } else {
            reject("unknown key '" + key + "'");
        }
    }
    return cfg;
}

std::pair<ReturnSeries, ReturnSeries> load_returns(const CommonOptions& opt,
                                                   Frequency frequency) {
    const bool have_files = !opt.asset1.empty() || !opt.asset2.empty();
    const bool have_synth = !opt.synthetic.empty();
    if (have_files == have_synth)
        throw UsageError("provide either --asset1/--asset2 or --synthetic, not both");

    PriceSeries p1, p2;
    if (have_files) {
        if (opt.asset1.empty() || opt.asset2.empty())
            throw UsageError("both --asset1 and --asset2 are required");
        std::tie(p1, p2) = align(load_csv(opt.asset1), load_csv(opt.asset2));
    } else {
        GeneratorConfig cfg = parse_generator_config(opt.synthetic);
        if (opt.seed_given) cfg.seed = opt.seed;
        auto [r1, r2] = cfg.regime == Regime::Gaussian ? gen_bivariate_gaussian(cfg)
                                                       : gen_crash_mixture(cfg);
        if (frequency == Frequency::Daily) return {std::move(r1), std::move(r2)};
        p1 = to_price_series(r1);
        p2 = to_price_series(r2);
    }

    if (frequency == Frequency::Daily)
        return {to_returns(p1), to_returns(p2)};
    return {to_returns(resample_weekly(p1), Frequency::Weekly),
            to_returns(resample_weekly(p2), Frequency::Weekly)};
}

// Grid file format: CSV with header `probability,w1,position`; w2 = 1 - w1.
std::vector<GridPoint> load_grid_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::file_not_found, "cannot open '" + path + "'");
    std::vector<GridPoint> grid;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = detail::trim(line);
        auto reject = [&](const std::string& why) {
            fail(errc::malformed_row, path + ":" + std::to_string(line_no) + ": " + why);
        };
        if (line_no == 1) {
            if (row != "probability,w1,position")
                reject("expected header 'probability,w1,position'");
            continue;
        }
        if (row.empty()) continue;
        const auto c1 = row.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
        if (c2 == std::string_view::npos) reject("expected three fields");
        double p = 0.0, w1 = 0.0;
        if (!detail::parse_double(detail::trim(row.substr(0, c1)), p))
            reject("unparsable probability");
        if (!detail::parse_double(detail::trim(row.substr(c1 + 1, c2 - c1 - 1)), w1))
            reject("unparsable weight");
        const std::string_view pos = detail::trim(row.substr(c2 + 1));
        if (pos != "long" && pos != "short") reject("position must be 'long' or 'short'");
        try {
            grid.push_back(GridPoint{
                ProbabilityLevel(p),
                PortfolioSpec(w1, 1.0 - w1,
                              pos == "long" ? Position::Long : Position::Short)});
        } catch (const error& e) {
            reject(e.what());
        }
    }
    if (grid.empty()) fail(errc::invalid_config, "'" + path + "' defines an empty grid");
    return grid;
}

std::vector<Position> selected_positions(const std::string& position) {
    if (position == "long") return {Position::Long};
    if (position == "short") return {Position::Short};
    if (position == "both") return {Position::Long, Position::Short};
    throw UsageError("--position must be 'long', 'short' or 'both'");
}

std::vector<GridPoint> resolve_grid(const CommonOptions& opt, Frequency frequency,
                                    bool single_weight_pair) {
    std::string name = opt.grid;
    if (name.empty())
        name = frequency == Frequency::Daily ? "paper-daily" : "paper-weekly";

    const bool preset_daily = name == "paper-daily" || name == "paper-grid-daily";
    const bool preset_weekly = name == "paper-weekly" || name == "paper-grid-weekly";

    std::vector<GridPoint> grid;
    if (preset_daily || preset_weekly) {
        const Frequency grid_freq = preset_daily ? Frequency::Daily : Frequency::Weekly;
        if (grid_freq != frequency)
            throw UsageError("grid preset '" + name + "' does not match --frequency " +
                             frequency_name(frequency));
        grid = paper_grid(frequency);
    } else {
        if (!opt.weights.empty())
            throw UsageError("--weights cannot be combined with a grid file");
        grid = load_grid_file(name);
    }

    // --weights replaces the preset weight pairs, keeping the level set
    if ((preset_daily || preset_weekly) && (!opt.weights.empty() || single_weight_pair)) {
        std::vector<std::pair<double, double>> pairs;
        for (const auto& w : opt.weights) pairs.push_back(parse_weights(w));
        if (pairs.empty()) pairs.push_back({0.5, 0.5});
        if (single_weight_pair && pairs.size() > 1)
            throw UsageError("figure accepts a single --weights pair");
        std::vector<ProbabilityLevel> levels;
        for (const auto& g : grid) {
            bool seen = false;
            for (const auto& l : levels) seen = seen || l.p == g.p.p;
            if (!seen) levels.push_back(g.p);
        }
        std::vector<GridPoint> rebuilt;
        for (const auto& level : levels)
            for (const auto& [w1, w2] : pairs)
                for (Position pos : {Position::Long, Position::Short})
                    rebuilt.push_back(GridPoint{level, PortfolioSpec(w1, w2, pos)});
        grid = std::move(rebuilt);
    }

    const std::vector<Position> keep = selected_positions(opt.position);
    std::vector<GridPoint> filtered;
    for (const auto& g : grid)
        for (Position pos : keep)
            if (g.spec.position == pos) filtered.push_back(g);

    if (single_weight_pair) {
        for (const auto& g : filtered)
            if (g.spec.w1 != filtered.front().spec.w1)
                throw UsageError("figure requires a grid with a single weight pair");
    }
    if (filtered.empty()) fail(errc::invalid_config, "grid selection is empty");
    return filtered;
}

void write_output(const std::string& out, const std::string& content) {
    if (out.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) fail(errc::file_not_found, "cannot write '" + out + "'");
    file << content;
}

std::string surface_title(const ReturnSeries& r1, const ReturnSeries& r2,
                          Frequency frequency) {
    return "Implied correlation from " + std::string(frequency_name(frequency)) +
           " VaR: " + r1.asset_id + " / " + r2.asset_id;
}

int run_table(const CommonOptions& opt) {
    const Frequency frequency = parse_frequency(opt.frequency);
    const std::string format = opt.format.empty() ? "text" : opt.format;
    if (format != "text" && format != "csv")
        throw UsageError("table supports --format text|csv");

    const auto [r1, r2] = load_returns(opt, frequency);
    const auto grid = resolve_grid(opt, frequency, false);
    const CorrelationSurface surface = build_surface(r1, r2, frequency, grid);

    write_output(opt.out, format == "csv"
                              ? surface_to_csv(surface)
                              : surface_to_text(surface, surface_title(r1, r2, frequency)));
    return 0;
}

int run_figure(const CommonOptions& opt) {
    const Frequency frequency = parse_frequency(opt.frequency);
    const std::string format = opt.format.empty() ? "svg" : opt.format;
    if (format != "svg" && format != "csv")
        throw UsageError("figure supports --format svg|csv");

    const auto [r1, r2] = load_returns(opt, frequency);
    const auto grid = resolve_grid(opt, frequency, true);
    const CorrelationSurface surface = build_surface(r1, r2, frequency, grid);

    write_output(opt.out, format == "csv"
                              ? surface_to_csv(surface)
                              : figure_to_svg(surface, surface_title(r1, r2, frequency)));
    return 0;
}

int run_selftest(std::uint64_t seed, std::size_t n, const std::string& out) {
    const ConstancyReport report = run_gaussian_constancy(seed, n);
    write_output(out, format_constancy_report(report));
    return report.passed ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Historical VaR and implied correlation for two-asset portfolios"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::size_t selftest_n = kConstancySampleSize;

    auto add_source_options = [&](CLI::App* cmd) {
        cmd->add_option("--asset1", opt.asset1, "CSV of closes for the first asset");
        cmd->add_option("--asset2", opt.asset2, "CSV of closes for the second asset");
        cmd->add_option("--synthetic", opt.synthetic, "generator config (TOML)");
        cmd->add_option("--frequency", opt.frequency, "daily|weekly")->default_str("daily");
        cmd->add_option("--grid", opt.grid, "paper-daily|paper-weekly|<file>");
        cmd->add_option("--weights", opt.weights, "portfolio weights 'w1,w2' (repeatable)");
        cmd->add_option("--position", opt.position, "long|short|both")->default_str("both");
        cmd->add_option("--out", opt.out, "output path (default stdout)");
        cmd->add_option("--seed", opt.seed, "override the generator seed")
            ->each([&](const std::string&) { opt.seed_given = true; });
    };

    CLI::App* table = app.add_subcommand("table", "implied-correlation table");
    add_source_options(table);
    table->add_option("--format", opt.format, "text|csv");

    CLI::App* figure = app.add_subcommand("figure", "implied correlation vs waiting period");
    add_source_options(figure);
    figure->add_option("--format", opt.format, "svg|csv");

    CLI::App* selftest = app.add_subcommand("selftest", "gaussian constancy check");
    selftest->add_option("--seed", opt.seed, "generator seed")
        ->default_str("1")
        ->each([&](const std::string&) { opt.seed_given = true; });
    selftest->add_option("--out", opt.out, "output path (default stdout)");
    selftest->add_option("--n", selftest_n, "sample size")->group(""); // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (table->parsed()) return run_table(opt);
        if (figure->parsed()) return run_figure(opt);
        return run_selftest(opt.seed_given ? opt.seed : 1, selftest_n, opt.out);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const varcorr::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
