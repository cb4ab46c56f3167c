#pragma once

#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scmag {

// SI throughout. Gauss-based units appear only at I/O boundaries.
namespace constants {
inline constexpr double mu0 = 4.0 * std::numbers::pi * 1e-7;  // T m / A
inline constexpr double kB = 1.380649e-23;                     // J / K
inline constexpr double muB = 9.2740100783e-24;                // J / T
inline constexpr double g = 9.80665;                           // m / s^2
inline constexpr double hbar = 1.054571817e-34;                // J s
inline constexpr double e = 1.602176634e-19;                   // C
inline constexpr double Phi0 = std::numbers::pi * hbar / e;    // T m^2, flux quantum
inline constexpr double amu = 1.66053906660e-27;               // kg
}  // namespace constants

namespace units {
inline constexpr double gauss = 1e-4;                  // T
inline constexpr double gauss_per_cm = 1e-4 / 1e-2;    // T / m
inline constexpr double microkelvin = 1e-6;            // K
inline constexpr double micrometre = 1e-6;             // m
}  // namespace units

struct Material {
    std::string name;
    double Tc = 0.0;   // K
    double Bc1 = 0.0;  // T, in-plane (B || ab) entry for anisotropic materials
    double Bc2 = 0.0;  // T
    double jc = 0.0;   // A / m^2
    std::optional<double> Bc1_c;  // T, B || c entry where the table gives one

    // Throws InvalidArgument unless every field is positive and Bc1 < Bc2.
    void validate() const;
};

// Critical parameters at 4.2 K for the built-in type-II superconductors.
// Entries can be added at runtime or loaded from a text file.
class MaterialDatabase {
public:
    MaterialDatabase();  // populated with the built-in table

    const Material& lookup(std::string_view name) const;
    bool contains(std::string_view name) const;
    void add(Material m);  // replaces an existing entry with the same name
    std::vector<std::string> names() const;

    // Sectioned key/value text:
    //   [material NbN]
    //   Tc = 16 K
    //   Bc1 = 20 mT
    //   Bc2 = 15 T
    //   jc = 1e10 A/m2
    //   Bc1_c = 30 mT        (optional)
    void load_text(std::string_view text);
    void load_file(const std::string& path);

    static const MaterialDatabase& builtin();

private:
    std::map<std::string, Material, std::less<>> entries_;
};

inline const Material& lookup_material(std::string_view name) { return MaterialDatabase::builtin().lookup(name); }

struct AtomSpecies {
    std::string name;
    double mass = 0.0;  // kg
    double gF = 0.0;
    double mF = 0.0;

    // J / T; positive for weak-field seekers.
    double magnetic_moment() const { return gF * mF * constants::muB; }
};

AtomSpecies rubidium87_f2_m2();
AtomSpecies rubidium87_f1_mminus1();
AtomSpecies lookup_atom(std::string_view name);

// Smallest |grad B| that holds the atom against gravity: m g / moment.
double gravity_gradient_threshold(const AtomSpecies& atom);

// Field scale whose Zeeman energy equals kB T: kB T / moment.
double field_for_temperature_depth(const AtomSpecies& atom, double temperature);

}  // namespace scmag
