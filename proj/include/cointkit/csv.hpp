#pragma once

#include <string>
#include <vector>

#include "cointkit/series.hpp"

namespace cointkit {

/// Shortest round-trip decimal form of a double (std::to_chars), identical
/// across platforms.
std::string format_double(double value);

/// Read the ingestion CSV: header row, first column `year`, one variable per
/// remaining column, decimal point '.', consecutive years. Errors carry the
/// offending line/column.
std::vector<TimeSeries> read_csv(const std::string& path);

void write_csv(const Panel& panel, const std::string& path);
std::string to_csv(const Panel& panel);

}  // namespace cointkit
