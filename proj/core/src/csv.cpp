#include "rydmech/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace rydmech {

void CsvTable::add_row(const std::vector<double>& row) {
    if (row.size() != header.size()) throw InvalidArgument("CsvTable: row width does not match header");
    rows.push_back(row);
}

std::string csv_format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_serialize(const CsvTable& table) {
    std::ostringstream os;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) os << ',';
        os << table.header[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << csv_format_double(row[i]);
        }
        os << '\n';
    }
    return os.str();
}

CsvTable csv_parse(const std::string& text) {
    CsvTable out;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        if (first) {
            while (std::getline(ls, cell, ',')) out.header.push_back(cell);
            first = false;
            continue;
        }
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw InvalidArgument("csv_parse: non-numeric cell '" + cell + "'");
            }
        }
        if (row.size() != out.header.size()) throw InvalidArgument("csv_parse: ragged row");
        out.rows.push_back(std::move(row));
    }
    if (out.header.empty()) throw InvalidArgument("csv_parse: missing header");
    return out;
}

void csv_write_file(const std::string& path, const CsvTable& table) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("csv_write_file: cannot open '" + path + "'");
    f << csv_serialize(table);
}

CsvTable csv_read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("csv_read_file: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return csv_parse(ss.str());
}

}  // namespace rydmech
