#include "scmag/keyvalue.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <utility>

#include "scmag/errors.hpp"

namespace scmag {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::vector<KeyValue> parse_key_values(std::string_view text) {
    std::vector<KeyValue> out;
    std::string section;
    std::string sectionRaw;
    std::set<std::string> seen;  // keys of the current section instance
    int lineNo = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view raw = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineNo;

        auto cut = raw.find_first_of("#;");
        std::string line = trim(raw.substr(0, cut));
        if (line.empty()) {
            if (nl == text.size()) break;
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(lineNo, "unterminated section header '" + line + "'");
            sectionRaw = trim(std::string_view(line).substr(1, line.size() - 2));
            section = to_lower(sectionRaw);
            if (section.empty()) throw ConfigError(lineNo, "empty section header");
            seen.clear();
        } else {
            auto eq = line.find('=');
            if (eq == std::string::npos) throw ConfigError(lineNo, "expected 'key = value', got '" + line + "'");
            std::string key = to_lower(trim(std::string_view(line).substr(0, eq)));
            std::string value = trim(std::string_view(line).substr(eq + 1));
            if (key.empty()) throw ConfigError(lineNo, "missing key before '='");
            if (value.empty()) throw ConfigError(lineNo, "missing value for '" + key + "'");
            if (!seen.insert(key).second) throw ConfigError(lineNo, "duplicate key '" + key + "'");
            out.push_back({section, sectionRaw, std::move(key), std::move(value), lineNo});
        }
        if (nl == text.size()) break;
    }
    return out;
}

double parse_number(std::string_view text, int line) {
    std::string s = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw ConfigError(line, "expected a number, got '" + s + "'");
    return v;
}

namespace {

struct UnitEntry {
    std::string_view name;
    Dimension dim;
    double factor;
};

constexpr UnitEntry kUnits[] = {
    {"m", Dimension::Length, 1.0},
    {"cm", Dimension::Length, 1e-2},
    {"mm", Dimension::Length, 1e-3},
    {"um", Dimension::Length, 1e-6},
    {"\xC2\xB5m", Dimension::Length, 1e-6},
    {"nm", Dimension::Length, 1e-9},
    {"a", Dimension::Current, 1.0},
    {"ma", Dimension::Current, 1e-3},
    {"ua", Dimension::Current, 1e-6},
    {"t", Dimension::Field, 1.0},
    {"mt", Dimension::Field, 1e-3},
    {"ut", Dimension::Field, 1e-6},
    {"g", Dimension::Field, 1e-4},
    {"mg", Dimension::Field, 1e-7},
    {"k", Dimension::Temperature, 1.0},
    {"mk", Dimension::Temperature, 1e-3},
    {"uk", Dimension::Temperature, 1e-6},
    {"\xC2\xB5k", Dimension::Temperature, 1e-6},
    {"nk", Dimension::Temperature, 1e-9},
    {"a/m2", Dimension::CurrentDensity, 1.0},
    {"a/m^2", Dimension::CurrentDensity, 1.0},
    {"a/cm2", Dimension::CurrentDensity, 1e4},
    {"a/cm^2", Dimension::CurrentDensity, 1e4},
    {"t/m", Dimension::Gradient, 1.0},
    {"g/cm", Dimension::Gradient, 1e-2},
};

const char* dimension_name(Dimension d) {
    switch (d) {
        case Dimension::Dimensionless: return "dimensionless";
        case Dimension::Length: return "length";
        case Dimension::Current: return "current";
        case Dimension::Field: return "field";
        case Dimension::Temperature: return "temperature";
        case Dimension::CurrentDensity: return "current density";
        case Dimension::Gradient: return "gradient";
    }
    return "?";
}

}  // namespace

double parse_quantity(std::string_view text, Dimension dim, const UnitContext& ctx, int line) {
    std::string s = trim(text);
    // Split at the end of the numeric prefix.
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || !std::isfinite(v)) throw UnitError(line, "expected '<number> [unit]', got '" + s + "'");
    std::string unit = trim(std::string_view(ptr, s.data() + s.size() - ptr));
    std::string lunit = to_lower(unit);

    if (lunit.empty()) {
        if (dim == Dimension::Dimensionless) return v;
        throw UnitError(line, std::string("missing unit for ") + dimension_name(dim) + " value '" + s + "'");
    }
    if (dim == Dimension::Dimensionless) throw UnitError(line, "unexpected unit '" + unit + "'");

    auto relative = [&](const std::optional<double>& scale, const char* what) {
        if (!scale) throw UnitError(line, std::string("unit '") + unit + "' needs " + what + " to be defined");
        return v * *scale;
    };
    // Case matters for the relative units: "w" and "R" are lengths, "Ic" a current.
    if (dim == Dimension::Length && unit == "w") return relative(ctx.halfWidth, "the wire half-width");
    if (dim == Dimension::Length && unit == "R") return relative(ctx.radius, "the cylinder radius");
    if (dim == Dimension::Current && unit == "Ic") return relative(ctx.criticalCurrent, "a critical current");
    if (dim == Dimension::Field && lunit == "unit") return relative(ctx.fieldUnit, "current and half-width");

    for (const auto& u : kUnits) {
        if (u.name == lunit) {
            if (u.dim != dim)
                throw UnitError(line, "unit '" + unit + "' is a " + dimension_name(u.dim) + ", expected " +
                                          dimension_name(dim));
            return v * u.factor;
        }
    }
    throw UnitError(line, "unknown unit '" + unit + "'");
}

}  // namespace scmag
