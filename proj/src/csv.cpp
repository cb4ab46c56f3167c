#include "scmag/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "scmag/errors.hpp"

namespace scmag {

namespace {

constexpr std::string_view kUnitsPrefix = "# units: ";

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',') c = ';';
        else if (c == '\n' || c == '\r') c = ' ';
    return s;
}

std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        auto comma = line.find(',', pos);
        out.emplace_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

CsvCell parse_cell(const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (!s.empty() && ec == std::errc() && ptr == s.data() + s.size()) return v;
    return s;
}

}  // namespace

void CsvTable::add_row(std::vector<CsvCell> row) {
    if (row.size() != columns.size()) throw InvalidArgument("CSV row width does not match the header");
    rows.push_back(std::move(row));
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw InvalidArgument("no CSV column named '" + std::string(name) + "'");
}

double CsvTable::number(std::size_t row, std::string_view name) const {
    const auto& cell = rows.at(row).at(column(name));
    if (auto* v = std::get_if<double>(&cell)) return *v;
    throw InvalidArgument("CSV cell in column '" + std::string(name) + "' is not numeric");
}

const std::string& CsvTable::text(std::size_t row, std::string_view name) const {
    const auto& cell = rows.at(row).at(column(name));
    if (auto* s = std::get_if<std::string>(&cell)) return *s;
    throw InvalidArgument("CSV cell in column '" + std::string(name) + "' is not text");
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9e", v);
    return buf;
}

void write_csv(std::ostream& os, const CsvTable& t) {
    if (t.units.size() != t.columns.size()) throw InvalidArgument("CSV needs one unit per column");
    os << kUnitsPrefix;
    for (std::size_t i = 0; i < t.units.size(); ++i) os << (i ? "," : "") << sanitize(t.units[i]);
    os << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << sanitize(t.columns[i]);
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            if (auto* v = std::get_if<double>(&row[i])) os << format_number(*v);
            else os << sanitize(std::get<std::string>(row[i]));
        }
        os << '\n';
    }
}

std::string to_csv(const CsvTable& t) {
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

void write_csv_file(const std::string& path, const CsvTable& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_csv(out, t);
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

CsvTable parse_csv(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.size() < 2 || lines[0].substr(0, kUnitsPrefix.size()) != kUnitsPrefix)
        throw IoError("CSV must start with a '# units:' line and a header");
    CsvTable t;
    t.units = split(lines[0].substr(kUnitsPrefix.size()));
    t.columns = split(lines[1]);
    if (t.units.size() != t.columns.size()) throw IoError("CSV units line and header differ in width");
    for (std::size_t i = 2; i < lines.size(); ++i) {
        auto cells = split(lines[i]);
        if (cells.size() != t.columns.size())
            throw IoError("CSV line " + std::to_string(i + 1) + " has " + std::to_string(cells.size()) +
                          " cells, expected " + std::to_string(t.columns.size()));
        std::vector<CsvCell> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_cell(c));
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

}  // namespace scmag
