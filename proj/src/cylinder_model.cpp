#include "scmag/cylinder_model.hpp"

#include <cmath>
#include <numbers>

#include "scmag/errors.hpp"
#include "scmag/physical_core.hpp"

namespace scmag {

namespace {
constexpr double pi = std::numbers::pi;
}

void CylinderScene::validate() const {
    geom.validate();
    if (!(current >= 0)) throw InvalidArgument("cylinder current must be non-negative");
    if (!(bias >= 0)) throw InvalidArgument("bias magnitude must be non-negative");
}

PolarField cylinder_field_polar(const CylinderScene& scene, double r, double theta) {
    scene.validate();
    const double R = scene.geom.radius;
    if (r < R) throw InvalidArgument("point lies inside the cylinder (r < R)");
    const double q = (R / r) * (R / r);
    const double s = std::sin(theta), c = std::cos(theta);
    PolarField f;
    if (scene.state == WireState::Superconducting) {
        f.Br = -scene.bias * (1 - q) * s;
        f.Btheta = -scene.bias * (1 + q) * c;
    } else {
        f.Br = -scene.bias * s;
        f.Btheta = -scene.bias * c;
    }
    f.Btheta += constants::mu0 * scene.current / (2 * pi * r);
    return f;
}

FieldSample cylinder_field(const CylinderScene& scene, double r, double theta) {
    PolarField f = cylinder_field_polar(scene, r, theta);
    const double s = std::sin(theta), c = std::cos(theta);
    Vec2 rhat{s, c}, that{c, -s};
    return {r * rhat, f.Br * rhat + f.Btheta * that};
}

Vec2 cylinder_field_general(double R, double I, Vec2 bias, WireState state, Vec2 at) {
    if (!(R > 0)) throw InvalidGeometry("cylinder radius must be positive");
    const double r = norm(at);
    if (r < R) throw InvalidArgument("point lies inside the cylinder (r < R)");
    Vec2 rhat = at / r;
    Vec2 B = bias;
    if (state == WireState::Superconducting) {
        const double q = (R / r) * (R / r);
        B += q * (bias - 2 * dot(bias, rhat) * rhat);
    }
    // Current along +y: y-hat x r-hat = (r_z, -r_x).
    B += constants::mu0 * I / (2 * pi * r) * Vec2{rhat.z, -rhat.x};
    return B;
}

double trap_height_normal(double I, double B0, double R) {
    if (!(R > 0)) throw InvalidGeometry("cylinder radius must be positive");
    if (!(B0 > 0) || !(I > 0)) throw NoTrapError("a trap needs positive current and bias");
    double rt = constants::mu0 * I / (2 * pi * B0);
    if (rt < R) throw NoTrapError("bias too strong: the field zero would lie inside the wire");
    return rt - R;
}

double trap_height_superconducting(double I, double B0, double R) {
    if (!(R > 0)) throw InvalidGeometry("cylinder radius must be positive");
    if (!(B0 > 0) || !(I > 0)) throw NoTrapError("a trap needs positive current and bias");
    const double h = 2 * pi * R * B0 / (constants::mu0 * I);
    if (h > 0.5) throw NoTrapError("bias too strong: h = " + std::to_string(h) + " > 1/2 leaves no field zero");
    const double disc = std::sqrt((1 - 2 * h) * (1 + 2 * h));
    return R * (1 + disc) / (2 * h) - R;
}

double required_bias_cylinder(double zt, double I, double R, WireState state) {
    if (!(R > 0)) throw InvalidGeometry("cylinder radius must be positive");
    if (!(zt > 0)) throw InvalidArgument("trap height must be positive");
    const double r = zt + R;
    if (state == WireState::Normal) return constants::mu0 * I / (2 * pi * r);
    return constants::mu0 * I * r / (2 * pi * (r * r + R * R));
}

}  // namespace scmag
