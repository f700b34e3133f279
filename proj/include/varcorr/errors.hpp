#pragma once

#include <stdexcept>
#include <string>

namespace varcorr {

// Failure taxonomy shared across the library. The CLI maps any of these to
// exit code 2; tests match on the code rather than the message text.
enum class errc {
    file_not_found,
    malformed_row,
    empty_series,
    empty_intersection,
    too_short_series,
    date_mismatch,
    frequency_mismatch,
    insufficient_sample,
    unsupported_combination,
    mismatched_inputs,
    degenerate_var,
    constant_series,
    invalid_config,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::file_not_found:          return "file-not-found";
    case errc::malformed_row:           return "malformed-row";
    case errc::empty_series:            return "empty-series";
    case errc::empty_intersection:      return "empty-intersection";
    case errc::too_short_series:        return "too-short-series";
    case errc::date_mismatch:           return "date-mismatch";
    case errc::frequency_mismatch:      return "frequency-mismatch";
    case errc::insufficient_sample:     return "insufficient-sample";
    case errc::unsupported_combination: return "unsupported-combination";
    case errc::mismatched_inputs:       return "mismatched-inputs";
    case errc::degenerate_var:          return "degenerate-var";
    case errc::constant_series:         return "constant-series";
    case errc::invalid_config:          return "invalid-config";
    }
    return "unknown-error";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw error(code, what);
}

} // namespace varcorr
