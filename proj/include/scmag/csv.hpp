#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace scmag {

using CsvCell = std::variant<double, std::string>;

// A table with one unit per column. Written as
//   # units: <u1>,<u2>,...
//   <c1>,<c2>,...
//   rows...
// Numbers use "%.9e" so reruns are byte-identical; text cells must not
// contain commas or newlines (the writer replaces them).
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::string> units;
    std::vector<std::vector<CsvCell>> rows;

    void add_row(std::vector<CsvCell> row);
    std::size_t column(std::string_view name) const;  // index; InvalidArgument if absent
    double number(std::size_t row, std::string_view name) const;
    const std::string& text(std::size_t row, std::string_view name) const;
};

std::string format_number(double v);

void write_csv(std::ostream& os, const CsvTable& t);
std::string to_csv(const CsvTable& t);
void write_csv_file(const std::string& path, const CsvTable& t);

// Parses text produced by write_csv. Cells that parse completely as numbers
// become doubles, everything else text. Throws IoError on malformed input.
CsvTable parse_csv(std::string_view text);
CsvTable read_csv_file(const std::string& path);

}  // namespace scmag
