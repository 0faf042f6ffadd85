#include "cascade/scenarios/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cascade {

std::string format_number(double v) {
    char buf[32];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string to_csv_text(const CsvTable& table) {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (cells[k].find_first_of(",\"\n") != std::string::npos)
                throw std::invalid_argument("csv cell needs quoting: " + cells[k]);
            if (k) out += ',';
            out += cells[k];
        }
        out += '\n';
    };
    line(table.header);
    for (const auto& r : table.rows) {
        if (r.size() != table.header.size()) throw std::invalid_argument("csv row width does not match header");
        line(r);
    }
    return out;
}

CsvTable parse_csv_text(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.emplace_back();
        if (first) {
            t.header = std::move(cells);
            first = false;
        } else {
            if (cells.size() != t.header.size()) throw std::runtime_error("csv row width does not match header");
            t.rows.push_back(std::move(cells));
        }
    }
    if (first) throw std::runtime_error("csv has no header");
    return t;
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << to_csv_text(table);
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_csv_text(buf.str());
}

CsvTable series_table(const std::vector<CorrelationSeries>& series) {
    CsvTable t{{"tau", "value", "kind"}, {}};
    for (const auto& s : series)
        for (std::size_t k = 0; k < s.taus.size(); ++k)
            t.rows.push_back({format_number(s.taus[k]), format_number(s.values[k]), s.kind});
    return t;
}

std::vector<CorrelationSeries> series_from_table(const CsvTable& table) {
    if (table.header != std::vector<std::string>{"tau", "value", "kind"})
        throw std::runtime_error("not a series table");
    std::vector<CorrelationSeries> out;
    for (const auto& r : table.rows) {
        if (out.empty() || out.back().kind != r[2]) {
            out.emplace_back();
            out.back().kind = r[2];
        }
        out.back().taus.push_back(std::strtod(r[0].c_str(), nullptr));
        out.back().values.push_back(std::strtod(r[1].c_str(), nullptr));
    }
    return out;
}

} // namespace cascade
