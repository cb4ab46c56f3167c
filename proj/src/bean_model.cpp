#include "scmag/bean_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "scmag/errors.hpp"

namespace scmag {

namespace {
constexpr double pi = std::numbers::pi;

std::string amps(double I) { return std::to_string(I) + " A"; }
}  // namespace

BeanStripState::BeanStripState(double halfWidth, double thickness, double jc) : w_(halfWidth), d_(thickness), jc_(jc) {
    if (!(w_ > 0)) throw InvalidArgument("strip half-width must be positive");
    if (!(d_ > 0)) throw InvalidArgument("Bean model needs a positive thickness");
    if (!(jc_ > 0)) throw InvalidArgument("critical current density must be positive");
}

BeanStripState BeanStripState::from_material(double halfWidth, double thickness, const Material& m) {
    return BeanStripState(halfWidth, thickness, m.jc);
}

double BeanStripState::penetration_boundary(double I) const {
    double r = std::abs(I) / critical_current();
    if (r > 1) throw InvalidArgument("current " + amps(I) + " exceeds the critical current " + amps(critical_current()));
    return w_ * std::sqrt((1 - r) * (1 + r));
}

bool BeanStripState::is_virgin() const { return std::is_sorted(history_.begin(), history_.end()); }

void BeanStripState::apply(double I) {
    if (I < 0) throw InvalidArgument("negative currents are outside the supported history");
    if (I > critical_current())
        throw InvalidArgument("current " + amps(I) + " exceeds the critical current " + amps(critical_current()));
    if (!history_.empty() && !is_virgin() && I > history_.back())
        throw InvalidArgument("only one ramp up followed by one ramp down is supported (minor loops are not)");
    history_.push_back(I);
}

double bean_virgin_density(double x, double w, double Jc, double I) {
    const double ax = std::abs(x);
    if (ax > w || I <= 0) return 0.0;
    const double r = I / (2 * w * Jc);
    if (r >= 1) return Jc;
    const double b = w * std::sqrt((1 - r) * (1 + r));
    if (ax >= b) return Jc;
    return 2 * Jc / pi * std::atan(std::sqrt((w - b) * (w + b) / ((b - ax) * (b + ax))));
}

SheetCurrentProfile virgin_profile(const BeanStripState& state, double I) {
    if (I < 0) throw InvalidArgument("virgin profile needs I >= 0");
    if (I > state.critical_current())
        throw InvalidArgument("current " + amps(I) + " exceeds the critical current " + amps(state.critical_current()));
    if (!state.is_virgin() || (!state.history().empty() && I < state.history().back()))
        throw InvalidArgument("history is not a monotonic ramp from zero; use cycle_profile");
    const double w = state.half_width(), Jc = state.sheet_critical_current();
    const double b = state.penetration_boundary(I);
    std::vector<double> kinks;
    if (b > 0 && b < w) kinks = {-b, b};
    return SheetCurrentProfile(
        ProfileKind::BeanVirgin, w, I, [w, Jc, I](double x) { return bean_virgin_density(x, w, Jc, I); }, {},
        std::move(kinks));
}

SheetCurrentProfile cycle_profile(const BeanStripState& state, double Imax, double I) {
    const double Ic = state.critical_current();
    if (!(0 <= I && I <= Imax && Imax <= Ic))
        throw InvalidArgument("cycle profile needs 0 <= I <= Imax <= Ic (got I = " + amps(I) + ", Imax = " + amps(Imax) +
                              ")");
    const double w = state.half_width(), Jc = state.sheet_critical_current();
    const double dI = Imax - I;
    // Descending branch: the ramp-up profile minus a ramp-up of depth Imax - I
    // against doubled critical current.
    auto density = [w, Jc, Imax, dI](double x) {
        return bean_virgin_density(x, w, Jc, Imax) - bean_virgin_density(x, w, 2 * Jc, dI);
    };
    std::vector<double> kinks;
    double b1 = state.penetration_boundary(Imax);
    double r2 = dI / (2 * Ic);
    double b2 = w * std::sqrt((1 - r2) * (1 + r2));
    for (double b : {b1, b2})
        if (b > 0 && b < w) {
            kinks.push_back(-b);
            kinks.push_back(b);
        }
    return SheetCurrentProfile(ProfileKind::BeanRemnant, w, I, density, {}, std::move(kinks));
}

SheetCurrentProfile current_profile(const BeanStripState& state) {
    const auto& h = state.history();
    if (h.empty()) return virgin_profile(state, 0.0);
    if (state.is_virgin()) return virgin_profile(state, h.back());
    return cycle_profile(state, *std::max_element(h.begin(), h.end()), h.back());
}

double remnant_field_ratio(const BeanStripState& state, double Imax, double z) {
    if (!(z > 0)) throw InvalidArgument("height must be positive");
    if (!(Imax > 0)) throw InvalidArgument("peak current must be positive");
    BeanStripState fresh(state.half_width(), state.thickness(), state.jc());
    Vec2 p{0.0, z};
    double peak = norm(field_from_profile(virgin_profile(fresh, Imax), p).B);
    double remnant = norm(field_from_profile(cycle_profile(fresh, Imax, 0.0), p).B);
    return remnant / peak;
}

double linearity_defect(const BeanStripState& state, double I, double z) {
    if (!(I > 0 && I <= state.critical_current())) throw InvalidArgument("linearity defect needs 0 < I <= Ic");
    if (!(z > 0)) throw InvalidArgument("height must be positive");
    BeanStripState fresh(state.half_width(), state.thickness(), state.jc());
    double bean = norm(field_from_profile(virgin_profile(fresh, I), {0.0, z}).B);
    double ref = on_axis_meissner(I, state.half_width(), z);
    return std::abs(bean - ref) / ref;
}

}  // namespace scmag
