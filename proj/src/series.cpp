#include "cointkit/series.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cointkit {

double TimeSeries::at_year(int year) const {
    if (year < start_year || year > end_year())
        throw Error(errc::range_out_of_bounds,
                    name + " has no observation for year " + std::to_string(year));
    return values[static_cast<std::size_t>(year - start_year)];
}

std::vector<std::string> Panel::names() const {
    std::vector<std::string> out;
    out.reserve(columns.size());
    for (const auto& c : columns) out.push_back(c.name);
    return out;
}

int Panel::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i].name == name) return static_cast<int>(i);
    return -1;
}

Eigen::MatrixXd Panel::to_matrix() const {
    Eigen::MatrixXd m(length(), k());
    for (int j = 0; j < k(); ++j)
        for (int t = 0; t < length(); ++t) m(t, j) = columns[static_cast<std::size_t>(j)].values[static_cast<std::size_t>(t)];
    return m;
}

Panel align(const std::vector<TimeSeries>& series) {
    if (series.size() < 2)
        throw Error(errc::too_short, "align needs at least two series");

    std::set<std::string> seen;
    for (const auto& s : series) {
        if (s.values.empty())
            throw Error(errc::too_short, "series " + s.name + " is empty");
        if (!seen.insert(s.name).second)
            throw Error(errc::duplicate_name, "duplicate series name " + s.name);
    }

    int first = series.front().start_year;
    int last = series.front().end_year();
    for (const auto& s : series) {
        first = std::max(first, s.start_year);
        last = std::min(last, s.end_year());
    }
    if (first > last)
        throw Error(errc::empty_overlap, "series year ranges do not intersect");

    Panel panel;
    panel.columns.reserve(series.size());
    for (const auto& s : series) {
        TimeSeries c;
        c.name = s.name;
        c.unit = s.unit;
        c.start_year = first;
        auto begin = s.values.begin() + (first - s.start_year);
        c.values.assign(begin, begin + (last - first + 1));
        panel.columns.push_back(std::move(c));
    }
    return panel;
}

TimeSeries transform(const TimeSeries& s, const TransformSpec& spec) {
    using Kind = TransformSpec::Kind;
    const int n = s.length();

    auto require_length = [&](int needed) {
        if (n < needed)
            throw Error(errc::too_short, s.name + " too short for transform " + spec.to_string());
    };
    auto require_positive = [&]() {
        for (double v : s.values)
            if (!(v > 0.0))
                throw Error(errc::non_positive_for_log,
                            s.name + " has non-positive values; cannot take logs");
    };

    TimeSeries out;
    out.name = s.name;
    out.unit = s.unit;

    switch (spec.kind) {
        case Kind::level:
            return s;
        case Kind::log: {
            require_length(1);
            require_positive();
            out.start_year = s.start_year;
            out.values.reserve(static_cast<std::size_t>(n));
            for (double v : s.values) out.values.push_back(std::log(v));
            break;
        }
        case Kind::first_difference: {
            require_length(2);
            out.start_year = s.start_year + 1;
            out.values.reserve(static_cast<std::size_t>(n - 1));
            for (int t = 1; t < n; ++t) out.values.push_back(s.values[static_cast<std::size_t>(t)] - s.values[static_cast<std::size_t>(t - 1)]);
            break;
        }
        case Kind::lag: {
            if (spec.lag_order < 1)
                throw Error(errc::bad_spec, "lag order must be >= 1");
            require_length(spec.lag_order + 1);
            out.start_year = s.start_year + spec.lag_order;
            out.values.assign(s.values.begin(), s.values.end() - spec.lag_order);
            break;
        }
        case Kind::percent_growth: {
            require_length(2);
            out.start_year = s.start_year + 1;
            out.values.reserve(static_cast<std::size_t>(n - 1));
            for (int t = 1; t < n; ++t) {
                double base = s.values[static_cast<std::size_t>(t - 1)];
                if (base == 0.0)
                    throw Error(errc::invalid_value,
                                s.name + ": zero base value in percent-growth at year " +
                                    std::to_string(s.start_year + t - 1));
                out.values.push_back(100.0 * (s.values[static_cast<std::size_t>(t)] - base) / base);
            }
            out.unit = "percent";
            break;
        }
        case Kind::log_difference: {
            require_length(2);
            require_positive();
            out.start_year = s.start_year + 1;
            out.values.reserve(static_cast<std::size_t>(n - 1));
            for (int t = 1; t < n; ++t)
                out.values.push_back(std::log(s.values[static_cast<std::size_t>(t)]) - std::log(s.values[static_cast<std::size_t>(t - 1)]));
            break;
        }
        case Kind::index: {
            require_length(1);
            if (spec.base_year < s.start_year || spec.base_year > s.end_year())
                throw Error(errc::range_out_of_bounds,
                            "index base year " + std::to_string(spec.base_year) +
                                " outside the range of " + s.name);
            double base = s.at_year(spec.base_year);
            if (base == 0.0)
                throw Error(errc::invalid_value, s.name + ": zero value in index base year");
            out.start_year = s.start_year;
            out.values.reserve(static_cast<std::size_t>(n));
            for (double v : s.values) out.values.push_back(100.0 * v / base);
            out.unit = "index";
            break;
        }
    }

    for (double v : out.values)
        if (!std::isfinite(v))
            throw Error(errc::invalid_value, s.name + ": transform produced a non-finite value");
    return out;
}

std::vector<PeriodStats> period_stats(const TimeSeries& s, const std::vector<YearRange>& breakpoints) {
    std::vector<PeriodStats> out;
    out.reserve(breakpoints.size());
    for (const auto& range : breakpoints) {
        if (range.first > range.last)
            throw Error(errc::range_out_of_bounds, "period range is reversed");
        if (range.first < s.start_year || range.last > s.end_year())
            throw Error(errc::range_out_of_bounds,
                        "period " + std::to_string(range.first) + "-" + std::to_string(range.last) +
                            " outside the range of " + s.name);

        std::vector<double> window;
        window.reserve(static_cast<std::size_t>(range.last - range.first + 1));
        for (int y = range.first; y <= range.last; ++y) window.push_back(s.at_year(y));
        std::sort(window.begin(), window.end());

        PeriodStats ps;
        ps.period = std::to_string(range.first) + "-" + std::to_string(range.last);
        const std::size_t m = window.size();
        double sum = 0.0;
        for (double v : window) sum += v;
        ps.mean = sum / static_cast<double>(m);
        ps.median = (m % 2 == 1) ? window[m / 2] : 0.5 * (window[m / 2 - 1] + window[m / 2]);
        ps.min = window.front();
        ps.max = window.back();
        out.push_back(std::move(ps));
    }
    return out;
}

TransformSpec TransformSpec::parse(const std::string& text) {
    auto starts_with = [&](const char* prefix) { return text.rfind(prefix, 0) == 0; };
    auto parse_arg = [&](const std::string& t) {
        auto open = t.find('(');
        auto close = t.find(')');
        if (open == std::string::npos || close == std::string::npos || close < open + 2)
            throw Error(errc::parse_error, "malformed transform " + t);
        return std::stoi(t.substr(open + 1, close - open - 1));
    };

    if (text == "level") return level();
    if (text == "log") return log();
    if (text == "diff" || text == "first-difference") return first_difference();
    if (text == "percent-growth" || text == "pct-growth") return percent_growth();
    if (text == "log-difference" || text == "log-diff") return log_difference();
    if (starts_with("lag(")) return lag(parse_arg(text));
    if (starts_with("index(")) return index(parse_arg(text));
    throw Error(errc::parse_error, "unknown transform " + text);
}

std::string TransformSpec::to_string() const {
    switch (kind) {
        case Kind::level: return "level";
        case Kind::log: return "log";
        case Kind::first_difference: return "first-difference";
        case Kind::lag: return "lag(" + std::to_string(lag_order) + ")";
        case Kind::percent_growth: return "percent-growth";
        case Kind::log_difference: return "log-difference";
        case Kind::index: return "index(" + std::to_string(base_year) + ")";
    }
    return "level";
}

}  // namespace cointkit
