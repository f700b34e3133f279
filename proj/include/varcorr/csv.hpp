#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "varcorr/errors.hpp"
#include "varcorr/format.hpp"
#include "varcorr/series.hpp"

namespace varcorr {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline bool parse_double(std::string_view s, double& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

} // namespace detail

// Reads a `date,close` CSV into a PriceSeries. Bad rows are rejected, not
// repaired: any unparsable date, non-positive price, or date-order violation
// aborts the load with the offending line number. The asset id is taken from
// the file name stem.
inline PriceSeries load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        fail(errc::file_not_found, "cannot open '" + path.string() + "'");

    PriceSeries series{path.stem().string(), {}, {}};
    std::string line;
    std::size_t line_no = 0;

    auto reject = [&](const std::string& why) {
        fail(errc::malformed_row,
             path.string() + ":" + std::to_string(line_no) + ": " + why);
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view row = detail::trim(line);
        if (line_no == 1) {
            if (row != "date,close") reject("expected header 'date,close'");
            continue;
        }
        if (row.empty()) continue;

        const auto comma = row.find(',');
        if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
            reject("expected exactly two fields");

        const auto date = parse_date(detail::trim(row.substr(0, comma)));
        if (!date) reject("unparsable date");

        double close = 0.0;
        if (!detail::parse_double(detail::trim(row.substr(comma + 1)), close))
            reject("unparsable price");
        if (!(close > 0.0)) reject("price must be strictly positive");
        if (!series.dates.empty() && !(series.dates.back() < *date))
            reject("dates must be strictly increasing");

        series.dates.push_back(*date);
        series.closes.push_back(close);
    }

    if (series.size() == 0)
        fail(errc::empty_series, "'" + path.string() + "' contains no observations");
    return series;
}

inline void save_csv(const PriceSeries& series, std::ostream& out) {
    out << "date,close\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << format_date(series.dates[i]) << ','
            << detail::fmt_general(series.closes[i], 15) << '\n';
}

inline void save_csv(const PriceSeries& series, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        fail(errc::file_not_found, "cannot write '" + path.string() + "'");
    save_csv(series, out);
}

} // namespace varcorr
