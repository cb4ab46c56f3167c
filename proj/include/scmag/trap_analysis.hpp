#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scmag/bem_solver.hpp"
#include "scmag/field_source.hpp"
#include "scmag/parallel.hpp"
#include "scmag/physical_core.hpp"

namespace scmag {

struct TrapScene {
    std::shared_ptr<const FieldSource> source;
    Vec2 bias;  // T
    AtomSpecies atom = rubidium87_f2_m2();
    // Direction gravity pulls. Default: away from the chip surface, i.e. the
    // trap hangs below an upside-down chip.
    Vec2 gravityDirection{0.0, 1.0};
    bool gravity = true;

    void validate() const;
};

struct TrapOptions {
    double positionTol = 1e-6;   // relative to the source length scale
    double gradientStep = 1e-4;  // central-difference step, relative to the length scale
    double scanMin = 1e-3;       // height range of the initial axis scan, relative
    double scanMax = 1e3;
    std::size_t scanPoints = 241;
    double surfaceStop = 0.05;   // toward-surface depth scan stops this far above the surface (relative)
    double farReach = 1e4;       // away and lateral depth scans extend this far (relative)
    std::size_t barrierPoints = 241;
};

enum class EscapeDirection { TowardSurface, Away, Lateral };
std::string_view to_string(EscapeDirection d);

struct DepthResult {
    double depth = 0.0;  // K
    EscapeDirection limiting = EscapeDirection::Away;
    double barrierToward = 0.0, barrierAway = 0.0, barrierLateral = 0.0;  // J
};

struct TrapReport {
    Vec2 position;              // m
    double height = 0.0;        // above the surface, m
    double fieldAtMin = 0.0;    // T
    double gradientZ = 0.0;     // |dB/dz|, T/m
    double gradientX = 0.0;     // |dB/dx|, T/m
    double depth = 0.0;         // K
    EscapeDirection depthLimitingDirection = EscapeDirection::Away;
    DepthResult depthDetail;
    Vec2 biasUsed;              // T
    std::optional<bool> valid;  // Meissner-validity verdict when a material was checked
    std::string validityNote;
};

// mu |B| - m g (g-hat . r), J.
double total_potential(const TrapScene& scene, Vec2 at);

// Norms of the central-difference derivatives of the field vector along x
// and z (|B| itself has a cone tip at a field zero, so differencing the
// magnitude would return ~0 there).
struct FieldGradient {
    double dx = 0.0, dz = 0.0;  // T/m
};
FieldGradient field_gradient(const TrapScene& scene, Vec2 at, double step);

// Locates the potential minimum above the wire: log scan along x = 0,
// Brent refinement in z, then alternating x/z refinement unless the source
// is mirror symmetric. Fills gradients and depth. NoTrapError if the axis
// scan has no interior minimum.
TrapReport find_trap(const TrapScene& scene, const TrapOptions& opt = {});

// Barrier heights along +z, toward the surface and along +-x. NoTrapError
// when the potential never rises on the away side.
DepthResult trap_depth(const TrapScene& scene, const TrapReport& report, const TrapOptions& opt = {});

// Magnitude B0 of a bias (-B0, 0) that cancels Bx at (0, surface + z).
// Bias-transparent sources use the wire field directly; others are root-solved.
double required_bias(const TrapScene& scene, double zTarget);

struct MeissnerVerdict {
    bool valid = true;
    double maxSurfaceField = 0.0;  // T
    Vec2 location;
    double Bc1 = 0.0;
    double current = 0.0;
    double criticalCurrent = 0.0;  // jc * cross-section, A (0 if unknown)
    std::vector<std::string> reasons;
};

// Verdict from a surface-field summary and the current carried.
MeissnerVerdict meissner_validity(const Material& material, const std::optional<SurfaceFieldSummary>& surface,
                                  double current, std::optional<double> crossSection);
// Verdict for the scene's source and bias.
MeissnerVerdict meissner_validity(const TrapScene& scene, const Material& material);
// Verdict from a solved BEM problem: surface |B| = |t . B| per panel.
MeissnerVerdict meissner_validity(const TrapScene& scene, const Material& material, const BemSolution& solution);

struct ScanRow {
    double zTarget = 0.0;
    double bias = 0.0;  // T, magnitude of the required bias
    std::optional<TrapReport> report;
    std::string error;  // set when the row failed
};

struct ScanOptions {
    TrapOptions trap;
    std::optional<Material> material;
    Execution exec = Execution::Parallel;
};

// For each height: required bias, trap, gradients and depth. Row failures
// are recorded and the scan continues.
std::vector<ScanRow> scan_trap_parameters(const TrapScene& scene, const std::vector<double>& zTargets,
                                          const ScanOptions& opt = {});

}  // namespace scmag
