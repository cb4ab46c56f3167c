#include "scmag/trap_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "scmag/errors.hpp"

namespace scmag {

namespace {

constexpr int kBrentBits = 52;

std::string describe_bias(Vec2 b) {
    std::ostringstream os;
    os << "(" << b.x << ", " << b.z << ") T";
    return os.str();
}

// Minimizes f on [lo, hi]; returns the abscissa. Boost adds an absolute
// tolerance of ~1e-8 in the search variable, so search on the unit interval
// rather than in metres.
template <class F>
double brent_min(F&& f, double lo, double hi) {
    std::uintmax_t iters = 200;
    const double width = hi - lo;
    auto g = [&](double u) { return f(lo + u * width); };
    return lo + width * boost::math::tools::brent_find_minima(g, 0.0, 1.0, kBrentBits, iters).first;
}

std::vector<double> log_offsets(double first, double last, std::size_t n) {
    std::vector<double> t(n);
    const double ratio = std::log(last / first);
    for (std::size_t k = 0; k < n; ++k)
        t[k] = first * std::exp(ratio * static_cast<double>(k) / static_cast<double>(n - 1));
    t.back() = last;
    return t;
}

// Highest point of U - U0 along the path origin + t * dir for t in (0, T].
double barrier_along(const TrapScene& scene, Vec2 origin, Vec2 dir, double t0, double T, double U0, std::size_t n) {
    if (!(T > 0)) return 0.0;
    t0 = std::min(t0, 0.5 * T);
    auto U = [&](double t) { return total_potential(scene, origin + t * dir); };
    auto ts = log_offsets(t0, T, n);
    std::vector<double> us(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) us[k] = U(ts[k]);
    std::size_t k = static_cast<std::size_t>(std::max_element(us.begin(), us.end()) - us.begin());
    double best = us[k];
    if (k > 0 && k + 1 < ts.size()) {
        double t = brent_min([&](double s) { return -U(s); }, ts[k - 1], ts[k + 1]);
        best = std::max(best, U(t));
    }
    return best - U0;
}

}  // namespace

std::string_view to_string(EscapeDirection d) {
    switch (d) {
        case EscapeDirection::TowardSurface: return "toward-surface";
        case EscapeDirection::Away: return "away";
        case EscapeDirection::Lateral: return "lateral";
    }
    return "?";
}

void TrapScene::validate() const {
    if (!source) throw InvalidArgument("trap scene needs a field source");
    if (gravity && std::abs(norm(gravityDirection) - 1.0) > 1e-9)
        throw InvalidArgument("gravity direction must be a unit vector");
    if (!(atom.magnetic_moment() > 0)) throw InvalidArgument("atom '" + atom.name + "' is not a weak-field seeker");
}

double total_potential(const TrapScene& scene, Vec2 at) {
    double U = scene.atom.magnetic_moment() * norm(scene.source->field(at, scene.bias));
    if (scene.gravity) U -= scene.atom.mass * constants::g * dot(scene.gravityDirection, at);
    return U;
}

FieldGradient field_gradient(const TrapScene& scene, Vec2 at, double step) {
    if (!(step > 0)) throw InvalidArgument("gradient step must be positive");
    const auto& src = *scene.source;
    auto B = [&](Vec2 p) { return src.field(p, scene.bias); };
    Vec2 ex{step, 0.0}, ez{0.0, step};
    FieldGradient g;
    g.dx = norm(B(at + ex) - B(at - ex)) / (2 * step);
    g.dz = norm(B(at + ez) - B(at - ez)) / (2 * step);
    return g;
}

TrapReport find_trap(const TrapScene& scene, const TrapOptions& opt) {
    scene.validate();
    const FieldSource& src = *scene.source;
    const double s = src.length_scale(), z0 = src.surface_level();
    const double hMin = std::max(opt.scanMin * s, 2 * src.clearance());
    const double hMax = opt.scanMax * s;
    if (!(hMax > hMin) || opt.scanPoints < 3) throw InvalidArgument("invalid trap scan range");

    auto Uh = [&](double x, double h) { return total_potential(scene, {x, z0 + h}); };
    auto hs = log_offsets(hMin, hMax, opt.scanPoints);
    std::vector<double> us(hs.size());
    for (std::size_t k = 0; k < hs.size(); ++k) us[k] = Uh(0.0, hs[k]);

    std::size_t kBest = 0;
    double uBest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k + 1 < hs.size(); ++k)
        if (us[k] <= us[k - 1] && us[k] <= us[k + 1] && us[k] < uBest) {
            uBest = us[k];
            kBest = k;
        }
    if (kBest == 0)
        throw NoTrapError("no potential minimum above the wire (" + src.describe() + ", bias " +
                          describe_bias(scene.bias) + ")");

    double x = 0.0;
    double h = brent_min([&](double t) { return Uh(0.0, t); }, hs[kBest - 1], hs[kBest + 1]);

    if (!(src.mirror_symmetric() && scene.bias.z == 0.0)) {
        const double tol = opt.positionTol * s;
        for (int it = 0; it < 50; ++it) {
            double span = 0.2 * (h - 0.5 * hMin);
            double xn = brent_min([&](double t) { return Uh(t, h); }, x - span, x + span);
            double hn = brent_min([&](double t) { return Uh(xn, t); }, h - span, h + span);
            bool done = std::abs(xn - x) < tol && std::abs(hn - h) < tol;
            x = xn;
            h = hn;
            if (done) break;
        }
    }

    TrapReport r;
    r.position = {x, z0 + h};
    r.height = h;
    r.biasUsed = scene.bias;
    r.fieldAtMin = norm(src.field(r.position, scene.bias));
    double step = std::min(opt.gradientStep * s, 0.25 * (h - src.clearance()));
    FieldGradient g = field_gradient(scene, r.position, step);
    r.gradientX = g.dx;
    r.gradientZ = g.dz;
    r.depthDetail = trap_depth(scene, r, opt);
    r.depth = r.depthDetail.depth;
    r.depthLimitingDirection = r.depthDetail.limiting;
    return r;
}

DepthResult trap_depth(const TrapScene& scene, const TrapReport& report, const TrapOptions& opt) {
    scene.validate();
    const FieldSource& src = *scene.source;
    const double s = src.length_scale();
    const double h = report.position.z - src.surface_level();
    if (!(h > 0)) throw InvalidArgument("trap lies below the wire surface");
    const double U0 = total_potential(scene, report.position);
    const double t0 = 1e-3 * std::min(h, s);
    const std::size_t n = opt.barrierPoints;

    DepthResult d;
    d.barrierAway = barrier_along(scene, report.position, {0, 1}, t0, opt.farReach * s, U0, n);
    if (!(d.barrierAway > 0))
        throw NoTrapError("no potential barrier away from the surface (gravity exceeds the magnetic force?)");

    const double stop = std::max(std::min(opt.surfaceStop * s, 0.5 * h), src.clearance());
    d.barrierToward = barrier_along(scene, report.position, {0, -1}, t0, h - stop, U0, n);

    double left = barrier_along(scene, report.position, {-1, 0}, t0, opt.farReach * s, U0, n);
    double right = barrier_along(scene, report.position, {1, 0}, t0, opt.farReach * s, U0, n);
    d.barrierLateral = std::min(left, right);

    double best = d.barrierAway;
    d.limiting = EscapeDirection::Away;
    if (d.barrierToward < best) {
        best = d.barrierToward;
        d.limiting = EscapeDirection::TowardSurface;
    }
    if (d.barrierLateral < best) {
        best = d.barrierLateral;
        d.limiting = EscapeDirection::Lateral;
    }
    d.depth = std::max(best, 0.0) / constants::kB;
    return d;
}

double required_bias(const TrapScene& scene, double zTarget) {
    if (!scene.source) throw InvalidArgument("trap scene needs a field source");
    if (!(zTarget > 0)) throw InvalidArgument("target trap height must be positive");
    const FieldSource& src = *scene.source;
    const Vec2 p{0.0, src.surface_level() + zTarget};
    const double wire = src.field(p, {0.0, 0.0}).x;
    if (!(wire > 0)) throw NoTrapError("wire field at the target height does not point along +x; no side-guide trap");
    if (src.bias_transparent()) return wire;

    auto f = [&](double b) { return src.field(p, {-b, 0.0}).x; };
    double hi = wire;
    int grow = 0;
    while (f(hi) > 0) {
        hi *= 2;
        if (++grow > 200) throw NumericalError("required bias root not bracketed");
    }
    std::uintmax_t iters = 100;
    auto r = boost::math::tools::toms748_solve(f, 0.0, hi, wire, f(hi), boost::math::tools::eps_tolerance<double>(50),
                                               iters);
    return 0.5 * (r.first + r.second);
}

MeissnerVerdict meissner_validity(const Material& material, const std::optional<SurfaceFieldSummary>& surface,
                                  double current, std::optional<double> crossSection) {
    MeissnerVerdict v;
    v.Bc1 = material.Bc1;
    v.current = current;
    if (crossSection) {
        v.criticalCurrent = material.jc * *crossSection;
        if (std::abs(current) > v.criticalCurrent) {
            v.valid = false;
            v.reasons.push_back("critical current exceeded");
        }
    } else {
        v.reasons.push_back("cross-section unknown: critical current not checked");
    }
    if (surface) {
        v.maxSurfaceField = surface->maxField;
        v.location = surface->location;
        if (surface->maxField > material.Bc1) {
            v.valid = false;
            v.reasons.push_back(surface->atEdge ? "edge field exceeds Bc1" : "surface field exceeds Bc1");
        }
    } else {
        v.reasons.push_back("no surface-field estimate: Bc1 not checked");
    }
    return v;
}

MeissnerVerdict meissner_validity(const TrapScene& scene, const Material& material) {
    if (!scene.source) throw InvalidArgument("trap scene needs a field source");
    const FieldSource& src = *scene.source;
    return meissner_validity(material, src.surface_field_summary(scene.bias), src.current(), src.cross_section());
}

MeissnerVerdict meissner_validity(const TrapScene& scene, const Material& material, const BemSolution& solution) {
    (void)scene;
    auto B = surface_field(solution);
    auto it = std::max_element(B.begin(), B.end());
    const SurfaceMesh& mesh = solution.mesh();
    const Panel& p = mesh[static_cast<std::size_t>(it - B.begin())];
    double halfWidth = 0.0, area = 0.0;
    for (const auto& q : mesh) {
        halfWidth = std::max(halfWidth, std::abs(q.midpoint.x));
        area += 0.5 * dot(q.midpoint, q.normal) * q.length;
    }
    SurfaceFieldSummary s{*it, p.midpoint, !p.is_flat() || std::abs(p.midpoint.x) > 0.9 * halfWidth};
    return meissner_validity(material, s, solution.current, area);
}

std::vector<ScanRow> scan_trap_parameters(const TrapScene& scene, const std::vector<double>& zTargets,
                                          const ScanOptions& opt) {
    scene.validate();
    for (std::size_t i = 1; i < zTargets.size(); ++i)
        if (!(zTargets[i] > zTargets[i - 1])) throw InvalidArgument("scan heights must increase monotonically");
    std::vector<ScanRow> rows(zTargets.size());
    for_each_index(zTargets.size(), opt.exec, [&](std::size_t i) {
        ScanRow& row = rows[i];
        row.zTarget = zTargets[i];
        try {
            row.bias = required_bias(scene, row.zTarget);
            TrapScene local = scene;
            local.bias = {-row.bias, 0.0};
            TrapReport rep = find_trap(local, opt.trap);
            if (opt.material) {
                MeissnerVerdict v = meissner_validity(local, *opt.material);
                rep.valid = v.valid;
                for (const auto& why : v.reasons) rep.validityNote += (rep.validityNote.empty() ? "" : "; ") + why;
            }
            row.report = rep;
        } catch (const Error& e) {
            row.error = e.what();
        }
    });
    return rows;
}

}  // namespace scmag
