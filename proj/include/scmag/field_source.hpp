#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scmag/bem_solver.hpp"
#include "scmag/cylinder_model.hpp"
#include "scmag/parallel.hpp"
#include "scmag/sheet_models.hpp"

namespace scmag {

// Largest |B| found on the conductor surface for a given bias.
struct SurfaceFieldSummary {
    double maxField = 0.0;  // T
    Vec2 location;          // where it occurs
    bool atEdge = false;    // on a corner/edge rather than a flat face
};

// Anything that can report the total field around a wire for a uniform bias.
class FieldSource {
public:
    virtual ~FieldSource() = default;

    // Total field at a point, including any screening response to the bias.
    virtual Vec2 field(Vec2 at, Vec2 bias) const = 0;
    // z of the top of the wire.
    virtual double surface_level() const = 0;
    // w for strips, R for cylinders.
    virtual double length_scale() const = 0;
    // Closest admissible approach to the surface (m).
    virtual double clearance() const = 0;
    // True when the wire's own field does not depend on the bias.
    virtual bool bias_transparent() const = 0;
    // True when the field for a bias along x is mirror symmetric about x = 0.
    virtual bool mirror_symmetric() const = 0;
    virtual double current() const = 0;
    virtual std::string describe() const = 0;

    // Cross-section area of the conductor, when known (m^2).
    virtual std::optional<double> cross_section() const { return std::nullopt; }
    // Surface-field estimate for Meissner validity; empty when not applicable.
    virtual std::optional<SurfaceFieldSummary> surface_field_summary(Vec2 bias) const {
        (void)bias;
        return std::nullopt;
    }
};

// Thin strip carrying a fixed sheet-current profile; the bias is superposed.
// The optional thickness is used only for the surface-field estimate. With
// screenVertical set the strip also expels the vertical bias component
// (Meissner screening currents, linear in Bz); the horizontal component
// passes a thin sheet unperturbed either way.
class SheetSource : public FieldSource {
public:
    explicit SheetSource(SheetCurrentProfile profile, std::optional<double> thickness = std::nullopt,
                         bool screenVertical = false);

    Vec2 field(Vec2 at, Vec2 bias) const override;
    double surface_level() const override { return 0.0; }
    double length_scale() const override { return profile_.half_width(); }
    double clearance() const override { return 1e-6 * profile_.half_width(); }
    bool bias_transparent() const override { return true; }
    bool mirror_symmetric() const override { return profile_.is_even(); }
    double current() const override { return profile_.total_current(); }
    std::string describe() const override;
    std::optional<double> cross_section() const override;
    // Max |B| along the line z = d/2 above the sheet, |x| <= w + d/2. This
    // stands in for the top surface of a strip of thickness d, whose edges
    // cut off the thin-sheet edge singularity at the scale d.
    std::optional<SurfaceFieldSummary> surface_field_summary(Vec2 bias) const override;

    const SheetCurrentProfile& profile() const { return profile_; }

private:
    SheetCurrentProfile profile_;
    std::optional<double> thickness_;
    std::optional<SheetCurrentProfile> screenUnit_;  // response to Bz = 1 T
};

class CylinderSource : public FieldSource {
public:
    CylinderSource(double radius, double current, WireState state);

    Vec2 field(Vec2 at, Vec2 bias) const override;
    double surface_level() const override { return R_; }
    double length_scale() const override { return R_; }
    double clearance() const override { return 1e-9 * R_; }
    bool bias_transparent() const override { return state_ == WireState::Normal; }
    bool mirror_symmetric() const override { return true; }
    double current() const override { return I_; }
    std::string describe() const override;
    std::optional<double> cross_section() const override;
    std::optional<SurfaceFieldSummary> surface_field_summary(Vec2 bias) const override;

private:
    double R_, I_;
    WireState state_;
};

// Finite-thickness Meissner conductor solved with the BEM. Field queries use
// the cached unit responses, so any bias costs the same as one evaluation.
class BemSource : public FieldSource {
public:
    BemSource(std::shared_ptr<const BemSolver> solver, double current);

    Vec2 field(Vec2 at, Vec2 bias) const override;
    double surface_level() const override { return top_; }
    double length_scale() const override { return halfWidth_; }
    double clearance() const override;
    bool bias_transparent() const override { return false; }
    bool mirror_symmetric() const override { return false; }
    double current() const override { return I_; }
    std::string describe() const override;
    std::optional<double> cross_section() const override;
    std::optional<SurfaceFieldSummary> surface_field_summary(Vec2 bias) const override;

    const BemSolver& solver() const { return *solver_; }

private:
    std::shared_ptr<const BemSolver> solver_;
    double I_;
    double top_, halfWidth_;
};

// Rectangular sampling grid, nx * nz points, x fastest.
struct Grid {
    double xMin = 0.0, xMax = 0.0;
    std::size_t nx = 2;
    double zMin = 0.0, zMax = 0.0;
    std::size_t nz = 2;
    void validate() const;
    std::vector<Vec2> points() const;
};

// Total field on a grid. Both execution modes give identical results.
// Points on or inside the conductor throw, or yield NaN fields when
// nanInside is set.
std::vector<FieldSample> field_map(const FieldSource& source, Vec2 bias, const Grid& grid,
                                   Execution exec = Execution::Parallel, bool nanInside = false);

}  // namespace scmag
