#include "scmag/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "scmag/errors.hpp"

namespace scmag {

namespace {
constexpr double pi = std::numbers::pi;

Vec2 unit_at(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Appends n panels along the straight segment a -> b with the given outward normal.
void add_line(std::vector<Panel>& out, Vec2 a, Vec2 b, Vec2 normal, std::size_t n) {
    Vec2 step = (b - a) / static_cast<double>(n);
    double len = norm(b - a) / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        Panel p;
        p.start = a + static_cast<double>(k) * step;
        p.end = a + static_cast<double>(k + 1) * step;
        p.midpoint = a + (static_cast<double>(k) + 0.5) * step;
        p.normal = normal;
        p.tangent = perp(normal);
        p.length = len;
        p.curvatureRadius = kFlat;
        out.push_back(p);
    }
}

// Appends n panels on the arc of radius r about c from angle a0 to a0 + sweep.
void add_arc(std::vector<Panel>& out, Vec2 c, double r, double a0, double sweep, std::size_t n) {
    double dA = sweep / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        double am = a0 + (static_cast<double>(k) + 0.5) * dA;
        Panel p;
        p.normal = unit_at(am);
        p.tangent = perp(p.normal);
        p.midpoint = c + r * p.normal;
        p.start = c + r * unit_at(a0 + static_cast<double>(k) * dA);
        p.end = c + r * unit_at(a0 + static_cast<double>(k + 1) * dA);
        p.length = r * dA;
        p.curvatureRadius = r;
        out.push_back(p);
    }
}
}  // namespace

StripGeometry StripGeometry::with_default_rounding(double halfWidth, double thickness) {
    return {halfWidth, thickness, halfWidth / 32.0};
}

void StripGeometry::validate() const {
    if (!(halfWidth > 0)) throw InvalidGeometry("strip half-width must be positive");
    if (!(thickness >= 0)) throw InvalidGeometry("strip thickness must be non-negative");
    if (!(cornerRadius >= 0)) throw InvalidGeometry("corner radius must be non-negative");
    if (cornerRadius > std::min(halfWidth, thickness / 2))
        throw InvalidGeometry("corner radius " + std::to_string(cornerRadius) + " exceeds min(w, d/2)");
}

void CylinderGeometry::validate() const {
    if (!(radius > 0)) throw InvalidGeometry("cylinder radius must be positive");
}

Vec2 Panel::point_at(double s, Vec2* normalOut) const {
    if (is_flat()) {
        if (normalOut) *normalOut = normal;
        return midpoint + s * tangent;
    }
    double a = s / curvatureRadius;
    Vec2 n = std::cos(a) * normal + std::sin(a) * tangent;
    if (normalOut) *normalOut = n;
    Vec2 centre = midpoint - curvatureRadius * normal;
    return centre + curvatureRadius * n;
}

SurfaceMesh::SurfaceMesh(std::vector<Panel> panels) : panels_(std::move(panels)) {
    if (panels_.size() < 3) throw InvalidGeometry("a closed mesh needs at least 3 panels");
}

double SurfaceMesh::perimeter() const {
    double s = 0.0;
    for (const auto& p : panels_) s += p.length;
    return s;
}

double SurfaceMesh::min_panel_length() const {
    return std::min_element(begin(), end(), [](auto& a, auto& b) { return a.length < b.length; })->length;
}

double SurfaceMesh::max_panel_length() const {
    return std::max_element(begin(), end(), [](auto& a, auto& b) { return a.length < b.length; })->length;
}

std::vector<double> SurfaceMesh::midpoint_arclengths() const {
    std::vector<double> s(panels_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < panels_.size(); ++i) {
        s[i] = acc + 0.5 * panels_[i].length;
        acc += panels_[i].length;
    }
    return s;
}

double SurfaceMesh::distance_to_surface(Vec2 p) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& panel : panels_) {
        // Arc panels: exact distance to the arc when the foot point lies on it.
        if (!panel.is_flat()) {
            Vec2 c = panel.midpoint - panel.curvatureRadius * panel.normal;
            Vec2 d = p - c;
            double r = norm(d);
            if (r > 0) {
                double ang = std::atan2(dot(d, panel.tangent), dot(d, panel.normal));
                if (std::abs(ang) * panel.curvatureRadius <= 0.5 * panel.length) {
                    best = std::min(best, std::abs(r - panel.curvatureRadius));
                    continue;
                }
            }
            best = std::min({best, norm(p - panel.start), norm(p - panel.end)});
            continue;
        }
        Vec2 ab = panel.end - panel.start;
        double t = std::clamp(dot(p - panel.start, ab) / norm2(ab), 0.0, 1.0);
        best = std::min(best, norm(p - (panel.start + t * ab)));
    }
    return best;
}

bool SurfaceMesh::contains(Vec2 p) const {
    // Winding number of the polygon through start points and arc midpoints.
    auto wind = [&](Vec2 a, Vec2 b) {
        double cross = (a.x - p.x) * (b.z - p.z) - (b.x - p.x) * (a.z - p.z);
        if (a.z <= p.z) return (b.z > p.z && cross > 0) ? 1 : 0;
        return (b.z <= p.z && cross < 0) ? -1 : 0;
    };
    int w = 0;
    for (const auto& panel : panels_) {
        w += wind(panel.start, panel.midpoint);
        w += wind(panel.midpoint, panel.end);
    }
    return w != 0;
}

void SurfaceMesh::write_csv(std::ostream& os) const {
    os << "# units: m,m,1,1,m,1/m\n";
    os << "x,z,nx,nz,da,curvature\n";
    char buf[256];
    for (const auto& p : panels_) {
        double curv = p.is_flat() ? 0.0 : 1.0 / p.curvatureRadius;
        std::snprintf(buf, sizeof buf, "%.9e,%.9e,%.9e,%.9e,%.9e,%.9e\n", p.midpoint.x, p.midpoint.z, p.normal.x,
                      p.normal.z, p.length, curv);
        os << buf;
    }
}

SurfaceMesh mesh_rounded_rectangle(const StripGeometry& geom, std::size_t nPanels) {
    geom.validate();
    if (!(geom.thickness > 0)) throw InvalidGeometry("boundary meshing needs a finite thickness");
    if (!(geom.cornerRadius > 0)) throw InvalidGeometry("boundary meshing needs rounded corners (r > 0)");
    if (nPanels < 32) throw InvalidGeometry("mesh too coarse: at least 32 panels required");

    const double w = geom.halfWidth, d = geom.thickness, r = geom.cornerRadius;
    const double face = 2 * (w - r);   // top and bottom
    const double side = d - 2 * r;     // left and right
    const double arc = 0.5 * pi * r;   // each corner
    const double perim = 2 * face + 2 * side + 4 * arc;
    const double n = static_cast<double>(nPanels);

    // Faces and sides first; equal lengths get equal counts so symmetric
    // shapes give symmetric meshes. Corners share the remainder.
    auto count = [&](double len) -> std::size_t {
        if (len <= 0) return 0;
        return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(n * len / perim)));
    };
    std::size_t nFace = count(face), nSide = count(side);
    while (2 * nFace + 2 * nSide + 4 > nPanels) {
        if (nFace >= nSide && nFace > 1) --nFace;
        else if (nSide > 1) --nSide;
        else break;
    }
    std::size_t rest = nPanels - 2 * nFace - 2 * nSide;
    std::size_t arcBase = rest / 4, arcExtra = rest % 4;
    std::size_t nArc[4];
    for (std::size_t k = 0; k < 4; ++k) nArc[k] = arcBase;
    // Extra panels go to the two top corners first, keeping the mesh mirror
    // symmetric about x = 0 whenever the remainder is even.
    const std::size_t order[4] = {0, 3, 1, 2};
    for (std::size_t k = 0; k < arcExtra; ++k) ++nArc[order[k]];

    std::vector<Panel> panels;
    panels.reserve(nPanels);
    // Counter-clockwise from the right end of the top face.
    add_line(panels, {w - r, 0}, {-w + r, 0}, {0, 1}, nFace);
    add_arc(panels, {-w + r, -r}, r, 0.5 * pi, 0.5 * pi, nArc[0]);
    if (nSide) add_line(panels, {-w, -r}, {-w, -d + r}, {-1, 0}, nSide);
    add_arc(panels, {-w + r, -d + r}, r, pi, 0.5 * pi, nArc[1]);
    add_line(panels, {-w + r, -d}, {w - r, -d}, {0, -1}, nFace);
    add_arc(panels, {w - r, -d + r}, r, 1.5 * pi, 0.5 * pi, nArc[2]);
    if (nSide) add_line(panels, {w, -d + r}, {w, -r}, {1, 0}, nSide);
    add_arc(panels, {w - r, -r}, r, 0.0, 0.5 * pi, nArc[3]);
    return SurfaceMesh(std::move(panels));
}

SurfaceMesh mesh_circle(const CylinderGeometry& geom, std::size_t nPanels) {
    geom.validate();
    if (nPanels < 16) throw InvalidGeometry("mesh too coarse: at least 16 panels required");
    std::vector<Panel> panels;
    panels.reserve(nPanels);
    add_arc(panels, {0, 0}, geom.radius, 0.0, 2 * pi, nPanels);
    return SurfaceMesh(std::move(panels));
}

}  // namespace scmag
