#include "scmag/sheet_models.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "scmag/errors.hpp"
#include "scmag/physical_core.hpp"

namespace scmag {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double halfPi = 0.5 * std::numbers::pi;

void require_width(double w) {
    if (!(w > 0) || !std::isfinite(w)) throw InvalidArgument("strip half-width must be positive");
}
}  // namespace

std::string_view to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::Meissner: return "meissner";
        case ProfileKind::Normal: return "normal";
        case ProfileKind::BeanVirgin: return "bean-virgin";
        case ProfileKind::BeanRemnant: return "bean-remnant";
        case ProfileKind::VerticalScreen: return "vertical-screen";
        case ProfileKind::Tabulated: return "tabulated";
    }
    return "?";
}

SheetCurrentProfile::SheetCurrentProfile(ProfileKind kind, double halfWidth, double totalCurrent,
                                         std::function<double(double)> density,
                                         std::function<double(double)> weighted, std::vector<double> kinks)
    : kind_(kind), w_(halfWidth), I_(totalCurrent), density_(std::move(density)), weighted_(std::move(weighted)),
      kinks_(std::move(kinks)) {
    require_width(w_);
    if (!density_) throw InvalidArgument("profile needs a density function");
}

double SheetCurrentProfile::operator()(double x) const {
    if (std::abs(x) > w_) return 0.0;
    return density_(x);
}

double SheetCurrentProfile::weighted(double phi) const {
    if (weighted_) return weighted_(phi);
    double c = std::cos(phi);
    if (c <= 0) return 0.0;
    return density_(std::clamp(w_ * std::sin(phi), -w_, w_)) * w_ * c;
}

double SheetCurrentProfile::integrated_current() const {
    std::vector<double> cuts;
    for (double k : kinks_) cuts.push_back(std::asin(std::clamp(k / w_, -1.0, 1.0)));
    QuadratureOptions opt;
    opt.relTol = 1e-12;
    return integrate_scalar([this](double phi) { return weighted(phi); }, -halfPi, halfPi, cuts, opt);
}

SheetCurrentProfile meissner_profile(double I, double w) {
    require_width(w);
    return SheetCurrentProfile(
        ProfileKind::Meissner, w, I, [I, w](double x) { return I / pi / std::sqrt((w - x) * (w + x)); },
        [I](double) { return I / pi; });
}

SheetCurrentProfile normal_profile(double I, double w) {
    require_width(w);
    return SheetCurrentProfile(ProfileKind::Normal, w, I, [I, w](double) { return I / (2 * w); });
}

SheetCurrentProfile vertical_screen_profile(double B0z, double w) {
    require_width(w);
    const double k = -2.0 * B0z / constants::mu0;
    return SheetCurrentProfile(
        ProfileKind::VerticalScreen, w, 0.0, [k, w](double x) { return k * x / std::sqrt((w - x) * (w + x)); },
        [k, w](double phi) { return k * w * std::sin(phi); });
}

SheetCurrentProfile tabulated_profile(double w, std::vector<double> xs, std::vector<double> J) {
    require_width(w);
    if (xs.size() < 2 || xs.size() != J.size()) throw InvalidArgument("tabulated profile needs matching samples");
    if (!std::is_sorted(xs.begin(), xs.end())) throw InvalidArgument("tabulated profile abscissae must ascend");
    if (xs.front() > -w || xs.back() < w) throw InvalidArgument("tabulated profile must cover [-w, w]");
    auto fx = std::make_shared<std::vector<double>>(std::move(xs));
    auto fj = std::make_shared<std::vector<double>>(std::move(J));
    auto density = [fx, fj](double x) {
        auto it = std::upper_bound(fx->begin(), fx->end(), x);
        std::size_t i = std::clamp<std::size_t>(static_cast<std::size_t>(it - fx->begin()), 1, fx->size() - 1);
        double x0 = (*fx)[i - 1], x1 = (*fx)[i];
        double t = x1 > x0 ? (x - x0) / (x1 - x0) : 0.0;
        return (*fj)[i - 1] + t * ((*fj)[i] - (*fj)[i - 1]);
    };
    std::vector<double> kinks;
    for (double x : *fx)
        if (x > -w && x < w) kinks.push_back(x);
    SheetCurrentProfile probe(ProfileKind::Tabulated, w, 0.0, density, {}, kinks);
    double I = probe.integrated_current();
    return SheetCurrentProfile(ProfileKind::Tabulated, w, I, density, {}, std::move(kinks));
}

FieldSample field_from_profile(const SheetCurrentProfile& p, Vec2 at, const QuadratureOptions& opt) {
    const double w = p.half_width();
    const double x = at.x, z = at.z;
    if (!std::isfinite(x) || !std::isfinite(z)) throw InvalidArgument("observation point must be finite");
    if (std::abs(x) <= w && std::abs(z) < 1e-6 * w)
        throw InvalidArgument("observation point lies on the current sheet");

    // x' = w sin(phi) removes the inverse-square-root edges. The kernel peaks
    // near x' = x with width |z|, so those points become breakpoints too.
    std::vector<double> cuts;
    auto add_cut = [&](double xp) {
        if (xp > -w && xp < w) cuts.push_back(std::asin(xp / w));
    };
    for (double k : p.kinks()) add_cut(k);
    add_cut(x);
    add_cut(x - std::abs(z));
    add_cut(x + std::abs(z));

    auto integrand = [&](double phi) {
        double xp = w * std::sin(phi);
        double dx = x - xp;
        double g = p.weighted(phi) / (dx * dx + z * z);
        return Vec2{g * z, -g * dx};
    };
    QuadratureResult r = integrate(integrand, -halfPi, halfPi, cuts, opt);
    return {at, (constants::mu0 / (2 * pi)) * r.value};
}

double on_axis_meissner(double I, double w, double z) {
    require_width(w);
    if (z < 0) throw InvalidArgument("height must be non-negative");
    return constants::mu0 * I / (2 * pi * std::hypot(w, z));
}

double on_axis_normal(double I, double w, double z) {
    require_width(w);
    if (z < 0) throw InvalidArgument("height must be non-negative");
    return constants::mu0 * I / (2 * pi * w) * std::atan2(w, z);
}

double field_unit(double I, double w) {
    require_width(w);
    return constants::mu0 * I / (2 * pi * pi * w);
}

}  // namespace scmag
