#pragma once

#include "scmag/geometry.hpp"
#include "scmag/sheet_models.hpp"

namespace scmag {

enum class WireState { Superconducting, Normal };

// Round wire of radius R centred at the origin carrying current I along +y,
// in a bias of magnitude B0 along -x. The bias then cancels the current field
// on the +z side, where theta = 0. Polar frame: r-hat = (sin t, cos t) and
// theta-hat = (cos t, -sin t) in (x, z) coordinates.
struct CylinderScene {
    CylinderGeometry geom;
    double current = 0.0;  // A
    double bias = 0.0;     // T, magnitude
    WireState state = WireState::Superconducting;
    void validate() const;
};

struct PolarField {
    double Br = 0.0;
    double Btheta = 0.0;
};

// Polar components at (r, theta); r >= R, otherwise InvalidArgument.
PolarField cylinder_field_polar(const CylinderScene& scene, double r, double theta);
// Same field as a Cartesian sample at (x, z) = (r sin t, r cos t).
FieldSample cylinder_field(const CylinderScene& scene, double r, double theta);

// Field outside a cylinder in an arbitrary uniform bias vector. A
// superconducting cylinder adds the image term (R/r)^2 (B0 - 2 (B0.r-hat) r-hat).
Vec2 cylinder_field_general(double R, double I, Vec2 bias, WireState state, Vec2 at);

// z_t = mu0 I / (2 pi B0) - R; NoTrapError when that is negative.
double trap_height_normal(double I, double B0, double R);
// z_t = R (1 + sqrt(1 - 4 h^2)) / 2h - R with h = 2 pi R B0 / (mu0 I); NoTrapError for h > 1/2.
double trap_height_superconducting(double I, double B0, double R);
// Bias that places the trap at height z_t above the top of the wire.
double required_bias_cylinder(double zt, double I, double R, WireState state);

}  // namespace scmag
