#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

#include "scmag/vec2.hpp"

namespace scmag {

// Rectangular strip of width 2w and thickness d occupying |x| <= w,
// -d <= z <= 0, so the top face is the chip surface z = 0. Corners are
// rounded with radius r.
struct StripGeometry {
    double halfWidth = 0.0;     // w, m
    double thickness = 0.0;     // d, m (0 is the thin-sheet idealization)
    double cornerRadius = 0.0;  // r, m

    // Corner radius w/32 unless given.
    static StripGeometry with_default_rounding(double halfWidth, double thickness);
    void validate() const;
};

struct CylinderGeometry {
    double radius = 0.0;  // m
    void validate() const;
};

inline constexpr double kFlat = std::numeric_limits<double>::infinity();

// One boundary element. Straight panels have curvatureRadius == kFlat;
// curved panels are circular arcs whose centre lies at
// midpoint - curvatureRadius * normal.
struct Panel {
    Vec2 midpoint;
    Vec2 normal;   // unit, pointing out of the conductor
    Vec2 tangent;  // unit, counter-clockwise: perp(normal)
    double length = 0.0;
    double curvatureRadius = kFlat;
    Vec2 start;  // endpoints on the true boundary, in traversal order
    Vec2 end;

    bool is_flat() const { return curvatureRadius == kFlat; }
    // Point at arclength offset s from the midpoint (|s| <= length / 2), with its normal.
    Vec2 point_at(double s, Vec2* normalOut = nullptr) const;
};

// Closed cross-section boundary, traversed once counter-clockwise.
class SurfaceMesh {
public:
    explicit SurfaceMesh(std::vector<Panel> panels);

    std::size_t size() const { return panels_.size(); }
    const Panel& operator[](std::size_t i) const { return panels_[i]; }
    const std::vector<Panel>& panels() const { return panels_; }
    auto begin() const { return panels_.begin(); }
    auto end() const { return panels_.end(); }

    double perimeter() const;
    double min_panel_length() const;
    double max_panel_length() const;
    // Arclength of each panel midpoint measured from the start of panel 0.
    std::vector<double> midpoint_arclengths() const;

    // Distance from p to the boundary polygon through the panel endpoints.
    double distance_to_surface(Vec2 p) const;
    // Winding-number test against the boundary polygon.
    bool contains(Vec2 p) const;

    // CSV rows: x,z,nx,nz,da,curvature (curvature 0 for flat panels).
    void write_csv(std::ostream& os) const;

private:
    std::vector<Panel> panels_;
};

// Rounded rectangle with panels allotted to faces and corner arcs in
// proportion to arclength. Requires d > 0, r > 0 and at least 32 panels.
SurfaceMesh mesh_rounded_rectangle(const StripGeometry& geom, std::size_t nPanels);

// Uniform panels on a circle centred at the origin, first midpoint at angle pi/n.
SurfaceMesh mesh_circle(const CylinderGeometry& geom, std::size_t nPanels);

}  // namespace scmag
