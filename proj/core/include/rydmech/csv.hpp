#pragma once

#include <string>
#include <vector>

#include "rydmech/types.hpp"

namespace rydmech {

// Minimal CSV table with deterministic serialization: floating-point cells
// are written with 17 significant digits so that parse -> re-serialize is
// byte-identical.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    void add_row(const std::vector<double>& row);
};

std::string csv_format_double(double v);
std::string csv_serialize(const CsvTable& table);
CsvTable csv_parse(const std::string& text);

void csv_write_file(const std::string& path, const CsvTable& table);
CsvTable csv_read_file(const std::string& path);

}  // namespace rydmech
