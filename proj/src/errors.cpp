#include "cointkit/errors.hpp"

namespace cointkit {

const char* errc_name(errc code) {
    switch (code) {
        case errc::empty_overlap: return "EmptyOverlap";
        case errc::duplicate_name: return "DuplicateName";
        case errc::range_out_of_bounds: return "RangeOutOfBounds";
        case errc::non_positive_for_log: return "NonPositiveForLog";
        case errc::too_short: return "TooShort";
        case errc::invalid_value: return "InvalidValue";
        case errc::too_few_observations: return "TooFewObservations";
        case errc::rank_out_of_range: return "RankOutOfRange";
        case errc::bad_ordering: return "BadOrdering";
        case errc::bad_spec: return "BadSpec";
        case errc::file_not_found: return "FileNotFound";
        case errc::parse_error: return "ParseError";
        case errc::missing_column: return "MissingColumn";
        case errc::gap_in_series: return "GapInSeries";
        case errc::rank_deficient: return "RankDeficient";
        case errc::not_positive_definite: return "NotPositiveDefinite";
        case errc::zero_pivot: return "ZeroPivot";
        case errc::zero_loading: return "ZeroLoading";
    }
    return "UnknownError";
}

bool is_numerical(errc code) {
    switch (code) {
        case errc::rank_deficient:
        case errc::not_positive_definite:
        case errc::zero_pivot:
        case errc::zero_loading:
            return true;
        default:
            return false;
    }
}

}  // namespace cointkit
