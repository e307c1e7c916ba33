#include "cointkit/csv.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

namespace cointkit {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream stream(line);
    while (std::getline(stream, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

double parse_number(const std::string& cell, int line_no, int col_no) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw Error(errc::parse_error, "line " + std::to_string(line_no) + ", column " +
                                           std::to_string(col_no) + ": cannot parse '" + cell +
                                           "' as a number");
    return value;
}

int parse_year(const std::string& cell, int line_no) {
    int value = 0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw Error(errc::parse_error,
                    "line " + std::to_string(line_no) + ", column 1: cannot parse year '" + cell + "'");
    return value;
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    if (ec != std::errc()) throw Error(errc::invalid_value, "cannot format value");
    return std::string(buffer, ptr);
}

std::vector<TimeSeries> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::file_not_found, path);

    std::string line;
    int line_no = 0;

    if (!std::getline(in, line))
        throw Error(errc::parse_error, path + " is empty");
    ++line_no;
    std::vector<std::string> header = split_line(line);
    if (header.size() < 2 || trim(header[0]) != "year")
        throw Error(errc::parse_error, "header must start with 'year' and name at least one variable");

    std::set<std::string> seen;
    for (std::size_t j = 1; j < header.size(); ++j) {
        if (header[j].empty())
            throw Error(errc::parse_error, "empty variable name in header column " + std::to_string(j + 1));
        if (!seen.insert(header[j]).second)
            throw Error(errc::duplicate_name, "duplicate column " + header[j]);
    }

    const std::size_t n_cols = header.size();
    std::vector<int> years;
    std::vector<std::vector<double>> columns(n_cols - 1);

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> cells = split_line(line);
        if (cells.size() != n_cols)
            throw Error(errc::parse_error, "line " + std::to_string(line_no) + ": expected " +
                                               std::to_string(n_cols) + " cells, got " +
                                               std::to_string(cells.size()));
        int year = parse_year(cells[0], line_no);
        if (!years.empty()) {
            if (year != years.back() + 1)
                throw Error(errc::gap_in_series,
                            "line " + std::to_string(line_no) + ": expected year " +
                                std::to_string(years.back() + 1) + ", got " + std::to_string(year));
        }
        years.push_back(year);
        for (std::size_t j = 1; j < n_cols; ++j)
            columns[j - 1].push_back(parse_number(cells[j], line_no, static_cast<int>(j + 1)));
    }
    if (years.empty()) throw Error(errc::parse_error, path + " has no data rows");

    std::vector<TimeSeries> series;
    series.reserve(n_cols - 1);
    for (std::size_t j = 1; j < n_cols; ++j) {
        TimeSeries s;
        s.name = header[j];
        s.start_year = years.front();
        s.values = std::move(columns[j - 1]);
        series.push_back(std::move(s));
    }
    return series;
}

std::string to_csv(const Panel& panel) {
    std::string out = "year";
    for (const auto& c : panel.columns) out += "," + c.name;
    out += "\n";
    for (int t = 0; t < panel.length(); ++t) {
        out += std::to_string(panel.start_year() + t);
        for (const auto& c : panel.columns)
            out += "," + format_double(c.values[static_cast<std::size_t>(t)]);
        out += "\n";
    }
    return out;
}

void write_csv(const Panel& panel, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::file_not_found, "cannot open " + path + " for writing");
    out << to_csv(panel);
}

}  // namespace cointkit
