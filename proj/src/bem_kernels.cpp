#include "scmag/bem_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scmag/errors.hpp"
#include "scmag/quadrature.hpp"

namespace scmag {

namespace {
constexpr double inv2pi = 0.5 / std::numbers::pi;
constexpr std::size_t kMaxSubdivisions = 400;
constexpr std::size_t kMaxSets = 4;

std::array<double, BemNodeCache::kStencil> lagrange(const std::array<double, BemNodeCache::kStencil>& pos, double s) {
    std::array<double, BemNodeCache::kStencil> L{};
    for (std::size_t a = 0; a < pos.size(); ++a) {
        double l = 1.0;
        for (std::size_t b = 0; b < pos.size(); ++b)
            if (b != a) l *= (s - pos[b]) / (pos[a] - pos[b]);
        L[a] = l;
    }
    return L;
}

std::array<double, BemNodeCache::kStencil> lagrange_derivative_at_zero(
    const std::array<double, BemNodeCache::kStencil>& pos) {
    std::array<double, BemNodeCache::kStencil> D{};
    for (std::size_t a = 0; a < pos.size(); ++a) {
        double sum = 0.0;
        for (std::size_t m = 0; m < pos.size(); ++m) {
            if (m == a) continue;
            double term = 1.0 / (pos[a] - pos[m]);
            for (std::size_t b = 0; b < pos.size(); ++b)
                if (b != a && b != m) term *= (0.0 - pos[b]) / (pos[a] - pos[b]);
            sum += term;
        }
        D[a] = sum;
    }
    return D;
}
}  // namespace

BemNodeCache::BemNodeCache(SurfaceMesh mesh) : mesh_(std::move(mesh)) {
    const std::size_t N = mesh_.size();
    if (N < kStencil) throw InvalidGeometry("mesh has fewer panels than the interpolation stencil");
    const auto rule = gauss_legendre(kGauss);
    const std::size_t c = kStencil / 2;
    stencil_.resize(N);
    offsets_.resize(N);
    dweights_.resize(N);
    nodes_.resize(N * kGauss);
    nodeInterp_.resize(N * kGauss);
    for (std::size_t j = 0; j < N; ++j) {
        auto& idx = stencil_[j];
        auto& pos = offsets_[j];
        for (std::size_t k = 0; k < kStencil; ++k) idx[k] = (j + N + k - c) % N;
        pos[c] = 0.0;
        for (std::size_t k = 1; k <= c; ++k) {
            pos[c + k] = pos[c + k - 1] + 0.5 * (mesh_[idx[c + k - 1]].length + mesh_[idx[c + k]].length);
            pos[c - k] = pos[c - k + 1] - 0.5 * (mesh_[idx[c - k + 1]].length + mesh_[idx[c - k]].length);
        }
        dweights_[j] = lagrange_derivative_at_zero(pos);
        const Panel& p = mesh_[j];
        const double half = 0.5 * p.length;
        for (std::size_t k = 0; k < kGauss; ++k) {
            double s = half * rule.nodes[k];
            Node& nd = nodes_[j * kGauss + k];
            nd.point = p.point_at(s, &nd.normal);
            nd.weight = half * rule.weights[k];
            nodeInterp_[j * kGauss + k] = lagrange(pos, s);
        }
    }
}

std::array<double, BemNodeCache::kStencil> BemNodeCache::interpolation_weights(std::size_t j, double s) const {
    return lagrange(offsets_[j], s);
}

std::vector<double> BemNodeCache::node_values(std::span<const double> panelValues) const {
    if (panelValues.size() != size()) throw InvalidArgument("density size does not match the mesh");
    std::vector<double> out(size() * kGauss);
    for (std::size_t j = 0; j < size(); ++j) {
        const auto& idx = stencil_[j];
        for (std::size_t k = 0; k < kGauss; ++k) {
            const auto& L = nodeInterp_[j * kGauss + k];
            double v = 0.0;
            for (std::size_t a = 0; a < kStencil; ++a) v += L[a] * panelValues[idx[a]];
            out[j * kGauss + k] = v;
        }
    }
    return out;
}

void bem_gradients(const BemNodeCache& cache, Vec2 r, std::span<const DensityView> sets, std::span<Vec2> gradPsi,
                   std::span<Vec2> gradA) {
    const std::size_t S = sets.size();
    if (S > kMaxSets || gradPsi.size() < S || gradA.size() < S)
        throw InvalidArgument("bem_gradients: bad density-set count");
    Vec2 gp[kMaxSets], ga[kMaxSets];
    const auto rule = gauss_legendre(BemNodeCache::kGauss);
    const std::size_t N = cache.size();

    auto add_node = [&](Vec2 q, Vec2 nn, double wt, const double* psiVal, const double* sigVal) {
        Vec2 dv = q - r;
        double rho2 = norm2(dv);
        double inv = 1.0 / rho2;
        double nd = dot(nn, dv);
        Vec2 kA = (-wt * inv2pi * inv) * dv;
        Vec2 kP = (wt * inv2pi * inv) * (nn - (2 * nd * inv) * dv);
        for (std::size_t s = 0; s < S; ++s) {
            gp[s] += psiVal[s] * kP;
            ga[s] += sigVal[s] * kA;
        }
    };

    for (std::size_t j = 0; j < N; ++j) {
        const Panel& p = cache.mesh()[j];
        double dist = norm(r - p.midpoint);
        double ratio = dist > 0 ? 4 * p.length / dist : static_cast<double>(kMaxSubdivisions);
        std::size_t m = static_cast<std::size_t>(std::clamp(std::ceil(ratio), 1.0, double(kMaxSubdivisions)));
        double psiVal[kMaxSets], sigVal[kMaxSets];
        if (m == 1) {
            for (std::size_t k = 0; k < BemNodeCache::kGauss; ++k) {
                const auto& nd = cache.node(j, k);
                std::size_t at = j * BemNodeCache::kGauss + k;
                for (std::size_t s = 0; s < S; ++s) {
                    psiVal[s] = sets[s].psiNodes[at];
                    sigVal[s] = sets[s].sigmaNodes[at];
                }
                add_node(nd.point, nd.normal, nd.weight, psiVal, sigVal);
            }
            continue;
        }
        const auto& idx = cache.stencil(j);
        const double h = p.length / static_cast<double>(m);
        for (std::size_t sub = 0; sub < m; ++sub) {
            double mid = -0.5 * p.length + (static_cast<double>(sub) + 0.5) * h;
            for (std::size_t k = 0; k < BemNodeCache::kGauss; ++k) {
                double s = mid + 0.5 * h * rule.nodes[k];
                Vec2 nn;
                Vec2 q = p.point_at(s, &nn);
                auto L = cache.interpolation_weights(j, s);
                for (std::size_t t = 0; t < S; ++t) {
                    double ps = 0.0, sg = 0.0;
                    for (std::size_t a = 0; a < BemNodeCache::kStencil; ++a) {
                        ps += L[a] * sets[t].psi[idx[a]];
                        sg += L[a] * sets[t].sigma[idx[a]];
                    }
                    psiVal[t] = ps;
                    sigVal[t] = sg;
                }
                add_node(q, nn, 0.5 * h * rule.weights[k], psiVal, sigVal);
            }
        }
    }
    for (std::size_t s = 0; s < S; ++s) {
        gradPsi[s] = gp[s];
        gradA[s] = ga[s];
    }
}

double log_self_term(double da) {
    if (!(da > 0)) throw InvalidArgument("panel length must be positive");
    return inv2pi * (1.0 - std::log(0.5 * da)) * da;
}

double curvature_self_coefficient(const Panel& p) {
    if (p.is_flat()) return 0.5;
    return 0.5 + (p.length / p.curvatureRadius) * 0.25 / std::numbers::pi;
}

Eigen::MatrixXd assemble_scalar_matrix(const SurfaceMesh& mesh, Execution exec) {
    const std::size_t N = mesh.size();
    Eigen::MatrixXd A(N, N);
    for_each_index(N, exec, [&](std::size_t i) {
        const Vec2 xi = mesh[i].midpoint;
        for (std::size_t j = 0; j < N; ++j) {
            if (j == i) {
                A(i, j) = curvature_self_coefficient(mesh[i]);
                continue;
            }
            Vec2 d = mesh[j].midpoint - xi;
            A(i, j) = inv2pi * dot(mesh[j].normal, d) / norm2(d) * mesh[j].length;
        }
    });
    return A;
}

Eigen::MatrixXd assemble_vector_matrix(const SurfaceMesh& mesh, double lengthScale, Execution exec) {
    if (!(lengthScale > 0)) throw InvalidArgument("length scale must be positive");
    const std::size_t N = mesh.size();
    Eigen::MatrixXd G(N, N);
    for_each_index(N, exec, [&](std::size_t i) {
        const Vec2 xi = mesh[i].midpoint;
        for (std::size_t j = 0; j < N; ++j) {
            double daj = mesh[j].length / lengthScale;
            if (j == i) {
                G(i, j) = log_self_term(daj);
                continue;
            }
            double rho = norm(mesh[j].midpoint - xi) / lengthScale;
            G(i, j) = -inv2pi * std::log(rho) * daj;
        }
    });
    return G;
}

}  // namespace scmag
