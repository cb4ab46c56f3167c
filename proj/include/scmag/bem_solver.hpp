#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "scmag/bem_kernels.hpp"
#include "scmag/geometry.hpp"
#include "scmag/parallel.hpp"
#include "scmag/sheet_models.hpp"

namespace scmag {

// Meissner-state conductor of arbitrary smooth cross-section. The exterior
// field is B = -grad(psi) + curl(A y-hat): psi carries the screening of the
// uniform bias (dpsi/dn = 0 on the surface), A the transport current
// (A = A0 on the surface).
struct BemProblem {
    SurfaceMesh mesh;
    Vec2 bias;             // T
    double current = 0.0;  // A, along +y
};

struct DenseSystem {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
};

// The vector-potential system is formed in lengths divided by this scale
// (ten perimeters), which keeps the log kernel away from the degenerate
// logarithmic capacity of the contour.
double bem_length_scale(const SurfaceMesh& mesh);

// Unknown: surface psi. Right-hand side: psi_ext = -x . B0.
DenseSystem assemble_scalar(const BemProblem& problem, Execution exec = Execution::Parallel);
// Unknown: dA/dn in scaled units for A0 = 1. Right-hand side: -A0.
DenseSystem assemble_vector(const BemProblem& problem, Execution exec = Execution::Parallel);

struct BemSolution {
    std::shared_ptr<const BemNodeCache> cache;
    Vec2 bias;
    double current = 0.0;
    std::vector<double> psiSurface;   // T m, per panel
    std::vector<double> dAdnSurface;  // T, per panel, physical units
    double A0 = 0.0;                  // T m, surface value of A after rescaling
    double currentScale = 0.0;        // mu0 I / (-sum dA/dn da) of the A0 = 1 solution
    double scalarRcond = 0.0;         // reciprocal condition estimates (0 if not factorized)
    double vectorRcond = 0.0;

    const SurfaceMesh& mesh() const { return cache->mesh(); }

    // Internal: node values for evaluation.
    std::vector<double> psiNodes, dAdnNodes;
    DensityView view() const { return {psiSurface, dAdnSurface, psiNodes, dAdnNodes}; }
};

// Factorizes both collocation matrices once; solve() then costs two
// back-substitutions' worth of work (unit solutions are cached).
class BemSolver {
public:
    explicit BemSolver(SurfaceMesh mesh, Execution exec = Execution::Parallel);

    BemSolution solve(Vec2 bias, double current) const;

    const SurfaceMesh& mesh() const { return cache_->mesh(); }
    std::shared_ptr<const BemNodeCache> cache() const { return cache_; }
    double scalar_rcond() const { return scalarRcond_; }
    double vector_rcond() const { return vectorRcond_; }

    // Fields at a point produced by 1 T of bias along x, 1 T along z, and 1 A
    // of transport current, each including the screening response.
    struct Responses {
        Vec2 biasX, biasZ, current;
    };
    Responses responses(Vec2 at) const;

private:
    std::shared_ptr<const BemNodeCache> cache_;
    std::vector<double> psiX_, psiZ_, sigmaUnit_;  // unit bias x, unit bias z, 1 A
    std::vector<double> psiXNodes_, psiZNodes_, sigmaUnitNodes_;
    std::vector<double> zeros_, zeroNodes_;
    double currentScaleUnit_ = 0.0;
    double scalarRcond_ = 0.0, vectorRcond_ = 0.0;
};

// Direct solve of one problem. Zero bias or zero current skips the
// corresponding subsystem.
BemSolution solve(const BemProblem& problem, Execution exec = Execution::Parallel);

// Minimum admissible distance from the surface for field evaluation:
// 0.1 of the shortest panel.
double near_surface_cutoff(const SurfaceMesh& mesh);
// Throws InvalidArgument for points inside or too close to the conductor.
void check_observation_point(const SurfaceMesh& mesh, Vec2 at);

FieldSample evaluate_field(const BemSolution& solution, Vec2 at);
std::vector<FieldSample> evaluate_field(const BemSolution& solution, const std::vector<Vec2>& points,
                                        Execution exec = Execution::Parallel);

// Per-panel sheet current along +y, K = -(t . B) / mu0 just outside the surface, A/m.
std::vector<double> surface_current(const BemSolution& solution);
// Per-panel |B| on the surface (|t . B|, as n . B = 0 there), T.
std::vector<double> surface_field(const BemSolution& solution);

}  // namespace scmag
