#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "scmag/quadrature.hpp"
#include "scmag/vec2.hpp"

namespace scmag {

enum class ProfileKind { Meissner, Normal, BeanVirgin, BeanRemnant, VerticalScreen, Tabulated };
std::string_view to_string(ProfileKind k);

// Sheet current J(x) in A/m on a strip |x| <= w lying in the plane z = 0,
// flowing along +y.
class SheetCurrentProfile {
public:
    // density: J(x) for |x| < w. weighted: J(w sin phi) * w cos phi on
    // [-pi/2, pi/2]; supply it when J has inverse-square-root edges so the
    // product can be written without the singularity. kinks: x positions
    // where J has a derivative jump (quadrature breakpoints).
    SheetCurrentProfile(ProfileKind kind, double halfWidth, double totalCurrent, std::function<double(double)> density,
                        std::function<double(double)> weighted = {}, std::vector<double> kinks = {});

    double operator()(double x) const;  // 0 outside the strip
    double weighted(double phi) const;

    ProfileKind kind() const { return kind_; }
    double half_width() const { return w_; }
    double total_current() const { return I_; }  // nominal, as constructed
    const std::vector<double>& kinks() const { return kinks_; }
    bool is_even() const { return kind_ != ProfileKind::VerticalScreen; }

    // Numerical integral of J over the strip.
    double integrated_current() const;

private:
    ProfileKind kind_;
    double w_;
    double I_;
    std::function<double(double)> density_;
    std::function<double(double)> weighted_;
    std::vector<double> kinks_;
};

// J = (I / pi) / sqrt(w^2 - x^2).
SheetCurrentProfile meissner_profile(double I, double w);
// J = I / 2w.
SheetCurrentProfile normal_profile(double I, double w);
// Screening current of a thin strip in a perpendicular field B0z:
// J = -(2 B0z / mu0) x / sqrt(w^2 - x^2). Net current zero.
SheetCurrentProfile vertical_screen_profile(double B0z, double w);
// Piecewise-linear interpolation of samples (xs ascending, covering [-w, w]).
SheetCurrentProfile tabulated_profile(double w, std::vector<double> xs, std::vector<double> J);

struct FieldSample {
    Vec2 position;  // m
    Vec2 B;         // T
};

// Biot-Savart field of the sheet at a point off the sheet. Points with
// |x| <= w and |z| < 1e-6 w are rejected (the field jumps across the sheet).
FieldSample field_from_profile(const SheetCurrentProfile& p, Vec2 at, const QuadratureOptions& opt = {});

// Closed forms for the field magnitude on the symmetry axis at height z >= 0.
double on_axis_meissner(double I, double w, double z);  // mu0 I / (2 pi sqrt(w^2 + z^2))
double on_axis_normal(double I, double w, double z);    // mu0 I / (2 pi w) atan(w / z)

// Field unit used in normalized plots: mu0 I / (2 pi^2 w).
double field_unit(double I, double w);

}  // namespace scmag
