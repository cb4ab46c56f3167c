#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scmag/cylinder_model.hpp"
#include "scmag/field_source.hpp"
#include "scmag/physical_core.hpp"
#include "scmag/vec2.hpp"

namespace scmag {

enum class WireModel { MeissnerThin, NormalThin, Bean, Cylinder, Bem };
std::string_view to_string(WireModel m);

struct WireConfig {
    WireModel model = WireModel::MeissnerThin;
    double halfWidth = 0.0;                // m (strip models)
    std::optional<double> thickness;       // m; required for bean and bem
    std::optional<double> cornerRadius;    // m (bem; default w/32)
    double radius = 0.0;                   // m (cylinder)
    WireState state = WireState::Superconducting;  // cylinder
    std::optional<std::string> material;
    std::optional<double> jc;              // A/m^2, overrides the material's
    std::size_t panels = 420;              // bem
};

struct DriveConfig {
    double current = 0.0;            // A
    std::optional<double> imax;      // bean: peak of a 0 -> imax -> current cycle
    Vec2 bias;                       // T (bias.x ignored when biasAuto)
    bool biasAuto = false;           // bias_x = auto: choose it for trap.height
};

enum class GravityMode { Away, Toward, Off };

struct TrapConfig {
    std::string atom = "Rb87";
    GravityMode gravity = GravityMode::Away;
    std::optional<double> height;             // m, target z_t for auto bias
    double depthThreshold = 10e-6;            // K
    double gradientThreshold = 15.3 * units::gauss_per_cm;  // T/m
};

struct ScanConfig {
    double zMin = 0.0, zMax = 0.0;  // m
    std::size_t n = 0;
    bool logSpacing = true;
    std::vector<double> heights() const;
};

struct BeanConfig {
    std::vector<double> ratios{0.2, 0.5, 0.85, 0.95};  // I / Ic for bean-profile
    std::size_t points = 201;
    double cycleRatio = 0.85;  // remnant: Imax / Ic
    double zMin = 0.0, zMax = 0.0;  // remnant heights, m (default 0.01 w .. 5 w)
    std::size_t nz = 50;
};

struct CylinderMapConfig {
    double rMin = 0.0, rMax = 0.0;  // m (default 1.05 R .. 5 R)
    std::size_t nr = 50;
    std::size_t ntheta = 73;
};

struct OutputConfig {
    std::string dir = ".";
    bool normalized = false;  // append columns in units of w and mu0 I / (2 pi^2 w)
};

struct ScenarioConfig {
    WireConfig wire;
    DriveConfig drive;
    TrapConfig trap;
    std::optional<Grid> grid;
    std::optional<ScanConfig> scan;
    BeanConfig bean;
    CylinderMapConfig cylinder;
    OutputConfig output;
    std::optional<std::string> materialsFile;
    MaterialDatabase materials;  // builtin plus the materials file, if any

    // Material for the wire: jc overridden by wire.jc when both are given.
    std::optional<Material> material() const;
    double length_scale() const;  // w or R
};

// Parses the sectioned key/value format (see README). All values end up in
// SI. Unknown sections and keys, repeated keys, and missing required keys are
// ConfigError with the line number; bad units are UnitError.
// baseDir resolves a relative materials file path.
ScenarioConfig parse_config(std::string_view text, const std::string& baseDir = ".");
ScenarioConfig load_config(const std::string& path);

}  // namespace scmag
