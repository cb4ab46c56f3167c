#pragma once

#include <vector>

#include "scmag/physical_core.hpp"
#include "scmag/sheet_models.hpp"

namespace scmag {

// Thin strip in the Bean critical state. Supported current histories are a
// single ramp up from zero followed by at most one ramp down.
class BeanStripState {
public:
    BeanStripState(double halfWidth, double thickness, double jc);
    static BeanStripState from_material(double halfWidth, double thickness, const Material& m);

    double half_width() const { return w_; }
    double thickness() const { return d_; }
    double jc() const { return jc_; }
    double sheet_critical_current() const { return d_ * jc_; }  // Jc, A/m
    double critical_current() const { return 2 * w_ * d_ * jc_; }  // Ic, A

    // b = w sqrt(1 - I^2 / Ic^2).
    double penetration_boundary(double I) const;

    // Appends a current setpoint. Throws InvalidArgument when |I| > Ic, I < 0,
    // or the history would leave the ramp-up/ramp-down pattern.
    void apply(double I);
    const std::vector<double>& history() const { return history_; }
    bool is_virgin() const;  // history nondecreasing

private:
    double w_, d_, jc_;
    std::vector<double> history_;
};

// Profile while ramping up from zero to I.
SheetCurrentProfile virgin_profile(const BeanStripState& state, double I);
// Profile on the way down from Imax to I (I = 0 gives the remnant profile).
SheetCurrentProfile cycle_profile(const BeanStripState& state, double Imax, double I);
// Profile for the last setpoint of the state's history.
SheetCurrentProfile current_profile(const BeanStripState& state);

// J(x) of the ramp-up profile for sheet critical current Jc and current I.
double bean_virgin_density(double x, double w, double Jc, double I);

// |B(0, z)| after the cycle 0 -> Imax -> 0 over |B(0, z)| at Imax.
double remnant_field_ratio(const BeanStripState& state, double Imax, double z);

// |B_bean(0, z) - B_meissner(0, z)| / B_meissner(0, z) at the same current.
double linearity_defect(const BeanStripState& state, double I, double z);

}  // namespace scmag
