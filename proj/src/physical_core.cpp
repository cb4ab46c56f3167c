#include "scmag/physical_core.hpp"

#include <fstream>
#include <sstream>

#include "scmag/errors.hpp"
#include "scmag/keyvalue.hpp"

namespace scmag {

void Material::validate() const {
    if (name.empty()) throw InvalidArgument("material needs a name");
    if (!(Tc > 0 && Bc1 > 0 && Bc2 > 0 && jc > 0))
        throw InvalidArgument("material '" + name + "': Tc, Bc1, Bc2 and jc must be positive");
    if (!(Bc1 < Bc2)) throw InvalidArgument("material '" + name + "': Bc1 must be below Bc2");
    if (Bc1_c && !(*Bc1_c > 0)) throw InvalidArgument("material '" + name + "': Bc1_c must be positive");
}

MaterialDatabase::MaterialDatabase() {
    // 4.2 K values. Bc2 entries quoted as "> 100 T (77 K)" are stored as 100 T.
    add({"Nb", 9.3, 0.140, 0.28, 5e10, std::nullopt});
    add({"Nb3Sn", 18.0, 0.040, 27.0, 6e10, std::nullopt});
    add({"MgB2", 39.0, 0.030, 15.0, 3.5e11, std::nullopt});
    add({"YBCO", 92.0, 0.025, 100.0, 7.2e11, 0.090});
    add({"BSCCO", 108.0, 0.013, 100.0, 1e10, std::nullopt});
}

const MaterialDatabase& MaterialDatabase::builtin() {
    static const MaterialDatabase db;
    return db;
}

const Material& MaterialDatabase::lookup(std::string_view name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) {
        std::string avail;
        for (const auto& [k, v] : entries_) avail += (avail.empty() ? "" : ", ") + k;
        throw UnknownEntry("unknown material '" + std::string(name) + "' (available: " + avail + ")");
    }
    return it->second;
}

bool MaterialDatabase::contains(std::string_view name) const { return entries_.find(name) != entries_.end(); }

void MaterialDatabase::add(Material m) {
    m.validate();
    auto key = m.name;
    entries_.insert_or_assign(std::move(key), std::move(m));
}

std::vector<std::string> MaterialDatabase::names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_) out.push_back(k);
    return out;
}

void MaterialDatabase::load_text(std::string_view text) {
    const UnitContext none{};
    std::vector<Material> pending;
    std::string current;
    for (const auto& kv : parse_key_values(text)) {
        if (kv.section.rfind("material ", 0) != 0)
            throw ConfigError(kv.line, "expected a [material <name>] section, got [" + kv.section + "]");
        if (kv.section != current) {
            current = kv.section;
            pending.push_back({});
            pending.back().name = trim(std::string_view(kv.sectionRaw).substr(9));
        }
        Material& m = pending.back();
        if (kv.key == "tc")
            m.Tc = parse_quantity(kv.value, Dimension::Temperature, none, kv.line);
        else if (kv.key == "bc1")
            m.Bc1 = parse_quantity(kv.value, Dimension::Field, none, kv.line);
        else if (kv.key == "bc1_c")
            m.Bc1_c = parse_quantity(kv.value, Dimension::Field, none, kv.line);
        else if (kv.key == "bc2")
            m.Bc2 = parse_quantity(kv.value, Dimension::Field, none, kv.line);
        else if (kv.key == "jc")
            m.jc = parse_quantity(kv.value, Dimension::CurrentDensity, none, kv.line);
        else if (kv.key == "name")
            m.name = kv.value;
        else
            throw ConfigError(kv.line, "unknown material key '" + kv.key + "'");
    }
    for (auto& m : pending) add(std::move(m));
}

void MaterialDatabase::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open materials file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    load_text(ss.str());
}

AtomSpecies rubidium87_f2_m2() { return {"Rb87", 86.909180531 * constants::amu, 0.5, 2.0}; }

AtomSpecies rubidium87_f1_mminus1() { return {"Rb87-F1", 86.909180531 * constants::amu, -0.5, -1.0}; }

AtomSpecies lookup_atom(std::string_view name) {
    if (name == "Rb87" || name == "Rb87-F2") return rubidium87_f2_m2();
    if (name == "Rb87-F1") return rubidium87_f1_mminus1();
    throw UnknownEntry("unknown atom '" + std::string(name) + "' (available: Rb87, Rb87-F2, Rb87-F1)");
}

namespace {
double checked_moment(const AtomSpecies& atom) {
    double mu = atom.magnetic_moment();
    if (!(mu > 0)) throw InvalidArgument("atom '" + atom.name + "' is not a weak-field seeker (moment <= 0)");
    return mu;
}
}  // namespace

double gravity_gradient_threshold(const AtomSpecies& atom) {
    return atom.mass * constants::g / checked_moment(atom);
}

double field_for_temperature_depth(const AtomSpecies& atom, double temperature) {
    if (temperature < 0) throw InvalidArgument("temperature must be non-negative");
    return constants::kB * temperature / checked_moment(atom);
}

}  // namespace scmag
