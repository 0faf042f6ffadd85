#pragma once

#include <string>
#include <vector>

#include "cascade/correl/correlation.hpp"

namespace cascade {

/// Header plus rows of already formatted cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Shortest text that parses back to the same double.
std::string format_number(double v);

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);
std::string to_csv_text(const CsvTable& table);
CsvTable parse_csv_text(const std::string& text);

/// Columns tau, value, kind; one block per series in order.
CsvTable series_table(const std::vector<CorrelationSeries>& series);
/// Inverse of series_table (values and grids only).
std::vector<CorrelationSeries> series_from_table(const CsvTable& table);

} // namespace cascade
