#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scmag {

// One "key = value" line of a sectioned text file.
struct KeyValue {
    std::string section;  // lower-cased section header, without brackets
    std::string sectionRaw;  // as written
    std::string key;      // lower-cased
    std::string value;    // trimmed, comments stripped
    int line = 0;
};

// Splits "[section]" headers and "key = value" lines. '#' and ';' start
// comments. Throws ConfigError (with line number) on malformed lines and on a
// key repeated within one section instance.
std::vector<KeyValue> parse_key_values(std::string_view text);

// Physical dimension expected for a value.
enum class Dimension { Dimensionless, Length, Current, Field, Temperature, CurrentDensity, Gradient };

// Scales for the relative units some keys accept ("w", "R", "Ic", "unit").
struct UnitContext {
    std::optional<double> halfWidth;   // m, enables "w"
    std::optional<double> radius;      // m, enables "R"
    std::optional<double> criticalCurrent;  // A, enables "Ic"
    std::optional<double> fieldUnit;   // T, enables "unit" (mu0 I / (2 pi^2 w))
};

// Parses "<number> [unit]" into SI. Throws UnitError naming the line when the
// unit does not match the dimension or a relative unit has no scale.
double parse_quantity(std::string_view text, Dimension dim, const UnitContext& ctx, int line = 0);

// Parses a bare number (no unit allowed).
double parse_number(std::string_view text, int line = 0);

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

}  // namespace scmag
