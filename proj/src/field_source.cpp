#include "scmag/field_source.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "scmag/errors.hpp"
#include "scmag/physical_core.hpp"

namespace scmag {

namespace {
constexpr double pi = std::numbers::pi;

std::string fmt_si(double v, const char* unit) {
    std::ostringstream os;
    os << v << ' ' << unit;
    return os.str();
}
}  // namespace

SheetSource::SheetSource(SheetCurrentProfile profile, std::optional<double> thickness, bool screenVertical)
    : profile_(std::move(profile)), thickness_(thickness) {
    if (thickness_ && !(*thickness_ > 0)) throw InvalidGeometry("strip thickness must be positive");
    if (screenVertical) screenUnit_ = vertical_screen_profile(1.0, profile_.half_width());
}

Vec2 SheetSource::field(Vec2 at, Vec2 bias) const {
    Vec2 B = bias + field_from_profile(profile_, at).B;
    if (screenUnit_ && bias.z != 0.0) B = B + bias.z * field_from_profile(*screenUnit_, at).B;
    return B;
}

std::string SheetSource::describe() const {
    return std::string("thin strip (") + std::string(to_string(profile_.kind())) + ", w = " +
           fmt_si(profile_.half_width(), "m") + ", I = " + fmt_si(profile_.total_current(), "A") + ")";
}

std::optional<double> SheetSource::cross_section() const {
    if (!thickness_) return std::nullopt;
    return 2 * profile_.half_width() * *thickness_;
}

std::optional<SurfaceFieldSummary> SheetSource::surface_field_summary(Vec2 bias) const {
    if (!thickness_) return std::nullopt;
    const double w = profile_.half_width(), h = 0.5 * *thickness_;
    const double xMax = w + h;
    auto mag = [&](double x) { return norm(field(Vec2{x, h}, bias)); };
    constexpr int n = 400;
    int best = 0;
    double bestVal = -1.0;
    std::vector<double> xs(n + 1);
    for (int k = 0; k <= n; ++k) {
        xs[k] = -xMax + 2 * xMax * k / n;
        double v = mag(xs[k]);
        if (v > bestVal) {
            bestVal = v;
            best = k;
        }
    }
    double lo = xs[std::max(0, best - 1)], hi = xs[std::min(n, best + 1)];
    // Unit-interval search: Boost's absolute tolerance would swamp micron scales.
    auto r = boost::math::tools::brent_find_minima([&](double u) { return -mag(lo + u * (hi - lo)); }, 0.0, 1.0, 40);
    SurfaceFieldSummary s;
    if (-r.second > bestVal) {
        s.maxField = -r.second;
        s.location = {lo + r.first * (hi - lo), h};
    } else {
        s.maxField = bestVal;
        s.location = {xs[best], h};
    }
    s.atEdge = std::abs(s.location.x) > 0.9 * w;
    return s;
}

CylinderSource::CylinderSource(double radius, double current, WireState state)
    : R_(radius), I_(current), state_(state) {
    if (!(R_ > 0)) throw InvalidGeometry("cylinder radius must be positive");
}

Vec2 CylinderSource::field(Vec2 at, Vec2 bias) const { return cylinder_field_general(R_, I_, bias, state_, at); }

std::string CylinderSource::describe() const {
    return std::string(state_ == WireState::Superconducting ? "superconducting" : "normal") + " cylinder (R = " +
           fmt_si(R_, "m") + ", I = " + fmt_si(I_, "A") + ")";
}

std::optional<double> CylinderSource::cross_section() const { return pi * R_ * R_; }

std::optional<SurfaceFieldSummary> CylinderSource::surface_field_summary(Vec2 bias) const {
    if (state_ == WireState::Normal) return std::nullopt;
    // On the surface B = (2 b.t + mu0 I / 2 pi R) t with t = theta-hat; the
    // largest value is where t points along the bias.
    const double b = norm(bias);
    double theta = b > 0 ? std::atan2(-bias.z, bias.x) : 0.0;
    SurfaceFieldSummary s;
    s.maxField = 2 * b + constants::mu0 * std::abs(I_) / (2 * pi * R_);
    s.location = {R_ * std::sin(theta), R_ * std::cos(theta)};
    return s;
}

BemSource::BemSource(std::shared_ptr<const BemSolver> solver, double current) : solver_(std::move(solver)), I_(current) {
    if (!solver_) throw InvalidArgument("BEM source needs a solver");
    top_ = -std::numeric_limits<double>::infinity();
    halfWidth_ = 0.0;
    for (const auto& p : solver_->mesh()) {
        for (Vec2 q : {p.start, p.end, p.midpoint}) {
            top_ = std::max(top_, q.z);
            halfWidth_ = std::max(halfWidth_, std::abs(q.x));
        }
    }
}

Vec2 BemSource::field(Vec2 at, Vec2 bias) const {
    auto r = solver_->responses(at);
    return bias.x * r.biasX + bias.z * r.biasZ + I_ * r.current;
}

double BemSource::clearance() const { return 2 * near_surface_cutoff(solver_->mesh()); }

std::string BemSource::describe() const {
    return "BEM conductor (" + std::to_string(solver_->mesh().size()) + " panels, I = " + fmt_si(I_, "A") + ")";
}

std::optional<double> BemSource::cross_section() const {
    double area = 0.0;
    for (const auto& p : solver_->mesh()) area += 0.5 * dot(p.midpoint, p.normal) * p.length;
    return area;
}

std::optional<SurfaceFieldSummary> BemSource::surface_field_summary(Vec2 bias) const {
    BemSolution sol = solver_->solve(bias, I_);
    auto B = surface_field(sol);
    auto it = std::max_element(B.begin(), B.end());
    const Panel& p = sol.mesh()[static_cast<std::size_t>(it - B.begin())];
    SurfaceFieldSummary s;
    s.maxField = *it;
    s.location = p.midpoint;
    s.atEdge = !p.is_flat() || std::abs(p.midpoint.x) > 0.9 * halfWidth_;
    return s;
}

void Grid::validate() const {
    if (nx < 2 || nz < 2) throw InvalidArgument("grid needs at least 2 points per axis");
    if (!(xMax > xMin) || !(zMax > zMin)) throw InvalidArgument("grid ranges must be increasing");
}

std::vector<Vec2> Grid::points() const {
    validate();
    std::vector<Vec2> pts;
    pts.reserve(nx * nz);
    for (std::size_t j = 0; j < nz; ++j) {
        double z = zMin + (zMax - zMin) * static_cast<double>(j) / static_cast<double>(nz - 1);
        for (std::size_t i = 0; i < nx; ++i) {
            double x = xMin + (xMax - xMin) * static_cast<double>(i) / static_cast<double>(nx - 1);
            pts.push_back({x, z});
        }
    }
    return pts;
}

std::vector<FieldSample> field_map(const FieldSource& source, Vec2 bias, const Grid& grid, Execution exec,
                                   bool nanInside) {
    auto pts = grid.points();
    std::vector<FieldSample> out(pts.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for_each_index(pts.size(), exec, [&](std::size_t i) {
        try {
            out[i] = {pts[i], source.field(pts[i], bias)};
        } catch (const InvalidArgument&) {
            if (!nanInside) throw;
            out[i] = {pts[i], {nan, nan}};
        }
    });
    return out;
}

}  // namespace scmag
