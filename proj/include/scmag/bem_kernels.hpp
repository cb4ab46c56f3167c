#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "scmag/geometry.hpp"
#include "scmag/parallel.hpp"

namespace scmag {

// Surface densities are represented by their panel-midpoint values and
// interpolated along the boundary with a 5-point Lagrange stencil in
// arclength. Every panel integral then runs along the true (straight or
// arc) panel with 8-point Gauss-Legendre, subdivided near the observer.
// Mixing a midpoint rule for distant panels with finer rules for close ones
// was found to break the cancellations of the double-layer term, so the same
// rule is used for all panels.
class BemNodeCache {
public:
    static constexpr std::size_t kStencil = 5;
    static constexpr std::size_t kGauss = 8;

    explicit BemNodeCache(SurfaceMesh mesh);

    const SurfaceMesh& mesh() const { return mesh_; }
    std::size_t size() const { return mesh_.size(); }

    // Neighbour panel indices of panel j's stencil and their arclength
    // offsets from panel j's midpoint.
    const std::array<std::size_t, kStencil>& stencil(std::size_t j) const { return stencil_[j]; }
    const std::array<double, kStencil>& offsets(std::size_t j) const { return offsets_[j]; }

    // Lagrange weights for the value at arclength offset s on panel j.
    std::array<double, kStencil> interpolation_weights(std::size_t j, double s) const;
    // Weights for the arclength derivative at the midpoint of panel j.
    const std::array<double, kStencil>& derivative_weights(std::size_t j) const { return dweights_[j]; }

    // Values of a panel density at the undivided Gauss nodes (size kGauss * N).
    std::vector<double> node_values(std::span<const double> panelValues) const;

    struct Node {
        Vec2 point;
        Vec2 normal;
        double weight;  // Gauss weight times the panel Jacobian, m
    };
    const Node& node(std::size_t j, std::size_t k) const { return nodes_[j * kGauss + k]; }
    const std::array<double, kStencil>& node_weights(std::size_t j, std::size_t k) const {
        return nodeInterp_[j * kGauss + k];
    }

private:
    SurfaceMesh mesh_;
    std::vector<std::array<std::size_t, kStencil>> stencil_;
    std::vector<std::array<double, kStencil>> offsets_;
    std::vector<std::array<double, kStencil>> dweights_;
    std::vector<Node> nodes_;
    std::vector<std::array<double, kStencil>> nodeInterp_;
};

// One surface solution: panel values plus their precomputed Gauss-node values.
struct DensityView {
    std::span<const double> psi;        // scalar potential, T m
    std::span<const double> sigma;      // dA/dn, T
    std::span<const double> psiNodes;   // node_values(psi)
    std::span<const double> sigmaNodes; // node_values(sigma)
};

// Gradients at r of the double-layer potential of psi and the single-layer
// potential of sigma for each density set. The field of set s with bias B0 is
// B0 - gradPsi[s] + (-gradA[s].z, gradA[s].x).
void bem_gradients(const BemNodeCache& cache, Vec2 r, std::span<const DensityView> sets, std::span<Vec2> gradPsi,
                   std::span<Vec2> gradA);

// Collocation matrices. Scalar: (1/2 + dphi/4pi) on the diagonal and the
// double-layer kernel off it. Vector: single-layer kernel in lengths divided
// by lengthScale, log self term on the diagonal.
Eigen::MatrixXd assemble_scalar_matrix(const SurfaceMesh& mesh, Execution exec);
Eigen::MatrixXd assemble_vector_matrix(const SurfaceMesh& mesh, double lengthScale, Execution exec);

// (1/2pi) (1 - log(da/2)) da: integral of -(1/2pi) log|s| over a panel of length da centred on s = 0.
double log_self_term(double da);
// 1/2 + dphi/4pi with dphi = da / curvature radius (0 for flat panels).
double curvature_self_coefficient(const Panel& p);

}  // namespace scmag
