#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "cointkit/errors.hpp"

namespace cointkit {

/// An annual time series. Observation i belongs to year start_year + i;
/// there are no gaps inside the range (gaps are rejected at load time).
struct TimeSeries {
    std::string name;
    int start_year = 0;
    std::vector<double> values;
    std::string unit;

    int length() const { return static_cast<int>(values.size()); }
    int end_year() const { return start_year + length() - 1; }

    /// Value for a calendar year; throws RangeOutOfBounds outside the range.
    double at_year(int year) const;
};

/// Year-aligned collection of series. All columns share start_year and length.
struct Panel {
    std::vector<TimeSeries> columns;

    int k() const { return static_cast<int>(columns.size()); }
    int length() const { return columns.empty() ? 0 : columns.front().length(); }
    int start_year() const { return columns.empty() ? 0 : columns.front().start_year; }
    int end_year() const { return start_year() + length() - 1; }

    std::vector<std::string> names() const;
    int index_of(const std::string& name) const;  // -1 when absent

    /// Observations as a length x k matrix, columns in declaration order.
    Eigen::MatrixXd to_matrix() const;
};

struct TransformSpec {
    enum class Kind {
        level,
        log,
        first_difference,
        lag,
        percent_growth,
        log_difference,
        index,
    };

    Kind kind = Kind::level;
    int lag_order = 1;    // for Kind::lag
    int base_year = 0;    // for Kind::index

    static TransformSpec level() { return {}; }
    static TransformSpec log() { return {Kind::log}; }
    static TransformSpec first_difference() { return {Kind::first_difference}; }
    static TransformSpec lag(int n) { return {Kind::lag, n}; }
    static TransformSpec percent_growth() { return {Kind::percent_growth}; }
    static TransformSpec log_difference() { return {Kind::log_difference}; }
    static TransformSpec index(int base_year) { return {Kind::index, 1, base_year}; }

    /// Parse "level", "log", "diff", "first-difference", "lag(n)",
    /// "percent-growth", "log-difference", "index(year)".
    static TransformSpec parse(const std::string& text);

    std::string to_string() const;
};

struct PeriodStats {
    std::string period;
    double mean = 0.0;
    double median = 0.0;
    double max = 0.0;
    double min = 0.0;
};

struct YearRange {
    int first = 0;
    int last = 0;
};

/// Restrict the series to the intersection of their year ranges, preserving
/// input order. Throws EmptyOverlap when the intersection is empty and
/// DuplicateName when two series share a name.
Panel align(const std::vector<TimeSeries>& series);

/// Apply a transform. The output start_year advances by the number of
/// observations the transform consumes (1 for differences and growth rates,
/// n for lag(n), 0 otherwise).
TimeSeries transform(const TimeSeries& s, const TransformSpec& spec);

/// Sample mean, median, max, min per year range. Median of an even-length
/// sample is the mean of the two central order statistics.
std::vector<PeriodStats> period_stats(const TimeSeries& s, const std::vector<YearRange>& breakpoints);

}  // namespace cointkit
