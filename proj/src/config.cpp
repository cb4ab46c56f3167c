#include "scmag/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "scmag/errors.hpp"
#include "scmag/keyvalue.hpp"
#include "scmag/sheet_models.hpp"

namespace scmag {

namespace {

const std::map<std::string, std::set<std::string>, std::less<>> kSchema = {
    {"wire", {"model", "half_width", "thickness", "corner_radius", "radius", "state", "material", "jc", "panels"}},
    {"drive", {"current", "imax", "bias_x", "bias_z"}},
    {"trap", {"atom", "gravity", "height", "depth_threshold", "gradient_threshold"}},
    {"grid", {"x_min", "x_max", "nx", "z_min", "z_max", "nz"}},
    {"scan", {"z_min", "z_max", "n", "spacing"}},
    {"bean", {"ratios", "points", "cycle_ratio", "z_min", "z_max", "nz"}},
    {"cylinder", {"r_min", "r_max", "nr", "ntheta"}},
    {"output", {"dir", "normalized"}},
    {"materials", {"file"}},
};

// Section -> key -> entry. Keys may appear once per file even when a section
// header repeats, so two "model" lines are a conflict rather than an override.
class Entries {
public:
    explicit Entries(const std::vector<KeyValue>& kvs) {
        for (const auto& kv : kvs) {
            auto sec = kSchema.find(kv.section);
            if (sec == kSchema.end()) throw ConfigError(kv.line, "unknown section [" + kv.sectionRaw + "]");
            if (!sec->second.count(kv.key))
                throw ConfigError(kv.line, "unknown key '" + kv.key + "' in [" + kv.section + "]");
            auto [it, fresh] = map_[kv.section].emplace(kv.key, kv);
            if (!fresh)
                throw ConfigError(kv.line, "'" + kv.key + "' in [" + kv.section + "] already set on line " +
                                               std::to_string(it->second.line));
            sections_.insert(kv.section);
        }
    }

    const KeyValue* find(const std::string& section, const std::string& key) const {
        auto s = map_.find(section);
        if (s == map_.end()) return nullptr;
        auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    }
    const KeyValue& require(const std::string& section, const std::string& key) const {
        if (auto* kv = find(section, key)) return *kv;
        throw ConfigError(0, "missing required key '" + key + "' in [" + section + "]");
    }
    bool has_section(const std::string& s) const { return sections_.count(s) > 0; }

private:
    std::map<std::string, std::map<std::string, KeyValue>> map_;
    std::set<std::string> sections_;
};

double quantity(const KeyValue& kv, Dimension dim, const UnitContext& ctx) {
    return parse_quantity(kv.value, dim, ctx, kv.line);
}

std::size_t count(const KeyValue& kv, std::size_t minimum) {
    double v = parse_number(kv.value, kv.line);
    if (v != std::floor(v) || v < static_cast<double>(minimum) || v > 1e8)
        throw ConfigError(kv.line, "'" + kv.key + "' must be an integer >= " + std::to_string(minimum));
    return static_cast<std::size_t>(v);
}

bool boolean(const KeyValue& kv) {
    std::string v = to_lower(kv.value);
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    throw ConfigError(kv.line, "'" + kv.key + "' must be true or false");
}

void positive(double v, const KeyValue& kv) {
    if (!(v > 0)) throw ConfigError(kv.line, "'" + kv.key + "' must be positive");
}

WireModel parse_model(const KeyValue& kv) {
    std::string v = to_lower(kv.value);
    if (v == "meissner-thin") return WireModel::MeissnerThin;
    if (v == "normal-thin") return WireModel::NormalThin;
    if (v == "bean") return WireModel::Bean;
    if (v == "cylinder") return WireModel::Cylinder;
    if (v == "bem") return WireModel::Bem;
    throw ConfigError(kv.line, "unknown wire model '" + kv.value +
                                   "' (expected meissner-thin, normal-thin, bean, cylinder or bem)");
}

}  // namespace

std::string_view to_string(WireModel m) {
    switch (m) {
        case WireModel::MeissnerThin: return "meissner-thin";
        case WireModel::NormalThin: return "normal-thin";
        case WireModel::Bean: return "bean";
        case WireModel::Cylinder: return "cylinder";
        case WireModel::Bem: return "bem";
    }
    return "?";
}

std::vector<double> ScanConfig::heights() const {
    std::vector<double> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        double t = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
        z[k] = logSpacing ? zMin * std::pow(zMax / zMin, t) : zMin + (zMax - zMin) * t;
    }
    if (n > 1) z.back() = zMax;
    return z;
}

std::optional<Material> ScenarioConfig::material() const {
    if (!wire.material) return std::nullopt;
    Material m = materials.lookup(*wire.material);
    if (wire.jc) m.jc = *wire.jc;
    return m;
}

double ScenarioConfig::length_scale() const {
    return wire.model == WireModel::Cylinder ? wire.radius : wire.halfWidth;
}

ScenarioConfig parse_config(std::string_view text, const std::string& baseDir) {
    Entries e(parse_key_values(text));
    ScenarioConfig c;
    UnitContext ctx;

    // [materials] first: the wire may name a material defined there.
    if (auto* kv = e.find("materials", "file")) {
        std::filesystem::path p(kv->value);
        if (p.is_relative()) p = std::filesystem::path(baseDir) / p;
        c.materialsFile = p.string();
        c.materials.load_file(*c.materialsFile);
    }

    // [wire]
    const KeyValue& model = e.require("wire", "model");
    c.wire.model = parse_model(model);
    const bool strip = c.wire.model != WireModel::Cylinder;
    if (strip) {
        const KeyValue& kv = e.require("wire", "half_width");
        c.wire.halfWidth = quantity(kv, Dimension::Length, ctx);
        positive(c.wire.halfWidth, kv);
        ctx.halfWidth = c.wire.halfWidth;
        if (e.find("wire", "radius")) throw ConfigError(e.find("wire", "radius")->line, "'radius' applies to the cylinder model only");
    } else {
        const KeyValue& kv = e.require("wire", "radius");
        c.wire.radius = quantity(kv, Dimension::Length, ctx);
        positive(c.wire.radius, kv);
        ctx.radius = c.wire.radius;
        if (e.find("wire", "half_width"))
            throw ConfigError(e.find("wire", "half_width")->line, "'half_width' does not apply to the cylinder model");
    }
    if (auto* kv = e.find("wire", "thickness")) {
        c.wire.thickness = quantity(*kv, Dimension::Length, ctx);
        positive(*c.wire.thickness, *kv);
    } else if (c.wire.model == WireModel::Bean || c.wire.model == WireModel::Bem) {
        e.require("wire", "thickness");
    }
    if (auto* kv = e.find("wire", "corner_radius")) {
        if (c.wire.model != WireModel::Bem) throw ConfigError(kv->line, "'corner_radius' applies to the bem model only");
        c.wire.cornerRadius = quantity(*kv, Dimension::Length, ctx);
    }
    if (auto* kv = e.find("wire", "panels")) {
        if (c.wire.model != WireModel::Bem) throw ConfigError(kv->line, "'panels' applies to the bem model only");
        c.wire.panels = count(*kv, 32);
    }
    if (auto* kv = e.find("wire", "state")) {
        if (c.wire.model != WireModel::Cylinder) throw ConfigError(kv->line, "'state' applies to the cylinder model only");
        std::string v = to_lower(kv->value);
        if (v == "superconducting") c.wire.state = WireState::Superconducting;
        else if (v == "normal") c.wire.state = WireState::Normal;
        else throw ConfigError(kv->line, "state must be 'superconducting' or 'normal'");
    }
    if (auto* kv = e.find("wire", "material")) {
        if (!c.materials.contains(kv->value))
            throw UnknownEntry("line " + std::to_string(kv->line) + ": unknown material '" + kv->value + "'");
        c.wire.material = kv->value;
    }
    if (auto* kv = e.find("wire", "jc")) {
        c.wire.jc = quantity(*kv, Dimension::CurrentDensity, ctx);
        positive(*c.wire.jc, *kv);
    }
    if (c.wire.model == WireModel::Bean) {
        auto m = c.material();
        if (!m && !c.wire.jc) throw ConfigError(model.line, "the bean model needs 'jc' or a 'material'");
        double jc = c.wire.jc ? *c.wire.jc : m->jc;
        ctx.criticalCurrent = 2 * c.wire.halfWidth * *c.wire.thickness * jc;
    }

    // [drive]
    const KeyValue& cur = e.require("drive", "current");
    c.drive.current = quantity(cur, Dimension::Current, ctx);
    if (strip && c.drive.current != 0.0) ctx.fieldUnit = field_unit(c.drive.current, c.wire.halfWidth);
    if (auto* kv = e.find("drive", "imax")) {
        if (c.wire.model != WireModel::Bean) throw ConfigError(kv->line, "'imax' applies to the bean model only");
        c.drive.imax = quantity(*kv, Dimension::Current, ctx);
    }
    if (auto* kv = e.find("drive", "bias_x")) {
        if (to_lower(kv->value) == "auto") c.drive.biasAuto = true;
        else c.drive.bias.x = quantity(*kv, Dimension::Field, ctx);
    }
    if (auto* kv = e.find("drive", "bias_z")) c.drive.bias.z = quantity(*kv, Dimension::Field, ctx);

    // [trap]
    if (auto* kv = e.find("trap", "atom")) {
        lookup_atom(kv->value);
        c.trap.atom = kv->value;
    }
    if (auto* kv = e.find("trap", "gravity")) {
        std::string v = to_lower(kv->value);
        if (v == "away") c.trap.gravity = GravityMode::Away;
        else if (v == "toward") c.trap.gravity = GravityMode::Toward;
        else if (v == "off") c.trap.gravity = GravityMode::Off;
        else throw ConfigError(kv->line, "gravity must be 'away', 'toward' or 'off'");
    }
    if (auto* kv = e.find("trap", "height")) {
        c.trap.height = quantity(*kv, Dimension::Length, ctx);
        positive(*c.trap.height, *kv);
    }
    if (c.drive.biasAuto && !c.trap.height)
        throw ConfigError(e.find("drive", "bias_x")->line, "bias_x = auto needs 'height' in [trap]");
    if (auto* kv = e.find("trap", "depth_threshold")) c.trap.depthThreshold = quantity(*kv, Dimension::Temperature, ctx);
    if (auto* kv = e.find("trap", "gradient_threshold"))
        c.trap.gradientThreshold = quantity(*kv, Dimension::Gradient, ctx);

    // [grid]
    if (e.has_section("grid")) {
        Grid g;
        g.xMin = quantity(e.require("grid", "x_min"), Dimension::Length, ctx);
        g.xMax = quantity(e.require("grid", "x_max"), Dimension::Length, ctx);
        g.zMin = quantity(e.require("grid", "z_min"), Dimension::Length, ctx);
        g.zMax = quantity(e.require("grid", "z_max"), Dimension::Length, ctx);
        g.nx = count(e.require("grid", "nx"), 2);
        g.nz = count(e.require("grid", "nz"), 2);
        if (!(g.xMax > g.xMin) || !(g.zMax > g.zMin))
            throw ConfigError(e.require("grid", "x_max").line, "grid ranges must be increasing");
        c.grid = g;
    }

    // [scan]
    if (e.has_section("scan")) {
        ScanConfig s;
        const KeyValue& lo = e.require("scan", "z_min");
        s.zMin = quantity(lo, Dimension::Length, ctx);
        s.zMax = quantity(e.require("scan", "z_max"), Dimension::Length, ctx);
        s.n = count(e.require("scan", "n"), 2);
        if (auto* kv = e.find("scan", "spacing")) {
            std::string v = to_lower(kv->value);
            if (v == "log") s.logSpacing = true;
            else if (v == "linear") s.logSpacing = false;
            else throw ConfigError(kv->line, "spacing must be 'log' or 'linear'");
        }
        if (!(s.zMin > 0) || !(s.zMax > s.zMin)) throw ConfigError(lo.line, "scan needs 0 < z_min < z_max");
        c.scan = s;
    }

    // [bean]
    if (auto* kv = e.find("bean", "ratios")) {
        c.bean.ratios.clear();
        std::stringstream ss(kv->value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            double r = parse_number(item, kv->line);
            if (!(r > 0 && r <= 1)) throw ConfigError(kv->line, "bean ratios must lie in (0, 1]");
            c.bean.ratios.push_back(r);
        }
    }
    if (auto* kv = e.find("bean", "points")) c.bean.points = count(*kv, 2);
    if (auto* kv = e.find("bean", "cycle_ratio")) {
        c.bean.cycleRatio = parse_number(kv->value, kv->line);
        if (!(c.bean.cycleRatio > 0 && c.bean.cycleRatio <= 1)) throw ConfigError(kv->line, "cycle_ratio must lie in (0, 1]");
    }
    if (strip) {
        c.bean.zMin = 0.01 * c.wire.halfWidth;
        c.bean.zMax = 5 * c.wire.halfWidth;
    }
    if (auto* kv = e.find("bean", "z_min")) c.bean.zMin = quantity(*kv, Dimension::Length, ctx);
    if (auto* kv = e.find("bean", "z_max")) c.bean.zMax = quantity(*kv, Dimension::Length, ctx);
    if (auto* kv = e.find("bean", "nz")) c.bean.nz = count(*kv, 2);

    // [cylinder]
    if (!strip) {
        c.cylinder.rMin = 1.05 * c.wire.radius;
        c.cylinder.rMax = 5 * c.wire.radius;
    }
    if (auto* kv = e.find("cylinder", "r_min")) c.cylinder.rMin = quantity(*kv, Dimension::Length, ctx);
    if (auto* kv = e.find("cylinder", "r_max")) c.cylinder.rMax = quantity(*kv, Dimension::Length, ctx);
    if (auto* kv = e.find("cylinder", "nr")) c.cylinder.nr = count(*kv, 2);
    if (auto* kv = e.find("cylinder", "ntheta")) c.cylinder.ntheta = count(*kv, 2);

    // [output]
    if (auto* kv = e.find("output", "dir")) c.output.dir = kv->value;
    if (auto* kv = e.find("output", "normalized")) c.output.normalized = boolean(*kv);
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    auto parent = std::filesystem::path(path).parent_path();
    return parse_config(ss.str(), parent.empty() ? "." : parent.string());
}

}  // namespace scmag
