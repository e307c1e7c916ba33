#pragma once

#include <stdexcept>
#include <string>

namespace cointkit {

enum class errc {
    // data / configuration problems
    empty_overlap,
    duplicate_name,
    range_out_of_bounds,
    non_positive_for_log,
    too_short,
    invalid_value,
    too_few_observations,
    rank_out_of_range,
    bad_ordering,
    bad_spec,
    file_not_found,
    parse_error,
    missing_column,
    gap_in_series,
    // numerical failures
    rank_deficient,
    not_positive_definite,
    zero_pivot,
    zero_loading,
};

const char* errc_name(errc code);

/// True for codes that indicate a numerical failure rather than bad input.
bool is_numerical(errc code);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

}  // namespace cointkit
