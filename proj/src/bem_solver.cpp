#include "scmag/bem_solver.hpp"

#include <cmath>
#include <sstream>

#include "scmag/errors.hpp"
#include "scmag/physical_core.hpp"

namespace scmag {

namespace {

Vec2 curl_of(Vec2 gradA) { return {-gradA.z, gradA.x}; }

struct Factorized {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    double rcond = 0.0;
};

Factorized factorize(const Eigen::MatrixXd& M, const char* which) {
    Factorized f;
    f.lu.compute(M);
    f.rcond = f.lu.rcond();
    if (!std::isfinite(f.rcond) || f.rcond < 1e-14) {
        std::ostringstream os;
        os << which << " BEM system is singular to working precision (rcond estimate " << f.rcond << ", "
           << M.rows() << " panels); check the mesh for overlapping or degenerate panels";
        throw NumericalError(os.str());
    }
    return f;
}

Eigen::VectorXd scalar_rhs(const SurfaceMesh& mesh, Vec2 bias) {
    Eigen::VectorXd b(static_cast<Eigen::Index>(mesh.size()));
    for (std::size_t i = 0; i < mesh.size(); ++i) b(static_cast<Eigen::Index>(i)) = -dot(mesh[i].midpoint, bias);
    return b;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

// From the A0 = 1 solution in scaled lengths: the factor mapping it onto 1 A
// and the physical dA/dn for 1 A.
double unit_current_scale(const SurfaceMesh& mesh, const Eigen::VectorXd& sigmaScaled, double L) {
    double mu0I = 0.0;
    for (std::size_t j = 0; j < mesh.size(); ++j)
        mu0I -= sigmaScaled(static_cast<Eigen::Index>(j)) * mesh[j].length / L;
    if (!(std::abs(mu0I) > 0) || !std::isfinite(mu0I))
        throw NumericalError("vector-potential solution carries no net current");
    return constants::mu0 / mu0I;
}

void fill_nodes(BemSolution& s) {
    s.psiNodes = s.cache->node_values(s.psiSurface);
    s.dAdnNodes = s.cache->node_values(s.dAdnSurface);
}

}  // namespace

double bem_length_scale(const SurfaceMesh& mesh) { return 10.0 * mesh.perimeter(); }

DenseSystem assemble_scalar(const BemProblem& problem, Execution exec) {
    return {assemble_scalar_matrix(problem.mesh, exec), scalar_rhs(problem.mesh, problem.bias)};
}

DenseSystem assemble_vector(const BemProblem& problem, Execution exec) {
    const auto N = static_cast<Eigen::Index>(problem.mesh.size());
    return {assemble_vector_matrix(problem.mesh, bem_length_scale(problem.mesh), exec),
            Eigen::VectorXd::Constant(N, -1.0)};
}

BemSolution solve(const BemProblem& problem, Execution exec) {
    BemSolution s;
    s.cache = std::make_shared<const BemNodeCache>(problem.mesh);
    s.bias = problem.bias;
    s.current = problem.current;
    const std::size_t N = problem.mesh.size();
    s.psiSurface.assign(N, 0.0);
    s.dAdnSurface.assign(N, 0.0);
    if (problem.bias.x != 0.0 || problem.bias.z != 0.0) {
        DenseSystem sys = assemble_scalar(problem, exec);
        Factorized f = factorize(sys.matrix, "scalar-potential");
        s.scalarRcond = f.rcond;
        s.psiSurface = to_std(f.lu.solve(sys.rhs));
    }
    if (problem.current != 0.0) {
        DenseSystem sys = assemble_vector(problem, exec);
        Factorized f = factorize(sys.matrix, "vector-potential");
        s.vectorRcond = f.rcond;
        Eigen::VectorXd sig = f.lu.solve(sys.rhs);
        const double L = bem_length_scale(problem.mesh);
        double unit = unit_current_scale(problem.mesh, sig, L);
        s.currentScale = unit * problem.current;
        s.A0 = s.currentScale;
        for (std::size_t j = 0; j < N; ++j) s.dAdnSurface[j] = s.currentScale * sig(static_cast<Eigen::Index>(j)) / L;
    }
    fill_nodes(s);
    return s;
}

BemSolver::BemSolver(SurfaceMesh mesh, Execution exec) {
    cache_ = std::make_shared<const BemNodeCache>(std::move(mesh));
    const SurfaceMesh& m = cache_->mesh();

    Factorized fs = factorize(assemble_scalar_matrix(m, exec), "scalar-potential");
    scalarRcond_ = fs.rcond;
    psiX_ = to_std(fs.lu.solve(scalar_rhs(m, {1.0, 0.0})));
    psiZ_ = to_std(fs.lu.solve(scalar_rhs(m, {0.0, 1.0})));

    const double L = bem_length_scale(m);
    Factorized fv = factorize(assemble_vector_matrix(m, L, exec), "vector-potential");
    vectorRcond_ = fv.rcond;
    Eigen::VectorXd sig = fv.lu.solve(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m.size()), -1.0));
    currentScaleUnit_ = unit_current_scale(m, sig, L);
    sigmaUnit_.resize(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) sigmaUnit_[j] = currentScaleUnit_ * sig(static_cast<Eigen::Index>(j)) / L;

    psiXNodes_ = cache_->node_values(psiX_);
    psiZNodes_ = cache_->node_values(psiZ_);
    sigmaUnitNodes_ = cache_->node_values(sigmaUnit_);
    zeros_.assign(m.size(), 0.0);
    zeroNodes_.assign(m.size() * BemNodeCache::kGauss, 0.0);
}

BemSolution BemSolver::solve(Vec2 bias, double current) const {
    BemSolution s;
    s.cache = cache_;
    s.bias = bias;
    s.current = current;
    const std::size_t N = cache_->size();
    s.psiSurface.resize(N);
    s.dAdnSurface.resize(N);
    for (std::size_t j = 0; j < N; ++j) {
        s.psiSurface[j] = bias.x * psiX_[j] + bias.z * psiZ_[j];
        s.dAdnSurface[j] = current * sigmaUnit_[j];
    }
    s.currentScale = current * currentScaleUnit_;
    s.A0 = s.currentScale;
    s.scalarRcond = scalarRcond_;
    s.vectorRcond = vectorRcond_;
    fill_nodes(s);
    return s;
}

BemSolver::Responses BemSolver::responses(Vec2 at) const {
    check_observation_point(cache_->mesh(), at);
    DensityView sets[2] = {{psiX_, sigmaUnit_, psiXNodes_, sigmaUnitNodes_}, {psiZ_, zeros_, psiZNodes_, zeroNodes_}};
    Vec2 gp[2], ga[2];
    bem_gradients(*cache_, at, sets, gp, ga);
    return {Vec2{1.0, 0.0} - gp[0], Vec2{0.0, 1.0} - gp[1], curl_of(ga[0])};
}

double near_surface_cutoff(const SurfaceMesh& mesh) { return 0.1 * mesh.min_panel_length(); }

void check_observation_point(const SurfaceMesh& mesh, Vec2 at) {
    if (!std::isfinite(at.x) || !std::isfinite(at.z)) throw InvalidArgument("observation point must be finite");
    if (mesh.contains(at)) throw InvalidArgument("observation point lies inside the conductor");
    double d = mesh.distance_to_surface(at);
    if (d <= near_surface_cutoff(mesh)) {
        std::ostringstream os;
        os << "observation point is " << d << " m from the surface, inside the near-surface cutoff of "
           << near_surface_cutoff(mesh) << " m";
        throw InvalidArgument(os.str());
    }
}

FieldSample evaluate_field(const BemSolution& solution, Vec2 at) {
    check_observation_point(solution.mesh(), at);
    DensityView set = solution.view();
    Vec2 gp, ga;
    bem_gradients(*solution.cache, at, {&set, 1}, {&gp, 1}, {&ga, 1});
    return {at, solution.bias - gp + curl_of(ga)};
}

std::vector<FieldSample> evaluate_field(const BemSolution& solution, const std::vector<Vec2>& points, Execution exec) {
    std::vector<FieldSample> out(points.size());
    for_each_index(points.size(), exec, [&](std::size_t i) { out[i] = evaluate_field(solution, points[i]); });
    return out;
}

std::vector<double> surface_current(const BemSolution& solution) {
    const auto& cache = *solution.cache;
    std::vector<double> K(cache.size());
    for (std::size_t j = 0; j < cache.size(); ++j) {
        const auto& idx = cache.stencil(j);
        const auto& D = cache.derivative_weights(j);
        double dpsi = 0.0;
        for (std::size_t a = 0; a < BemNodeCache::kStencil; ++a) dpsi += D[a] * solution.psiSurface[idx[a]];
        // Tangential field just outside: B_t = -dpsi/dt + dA/dn.
        K[j] = (dpsi - solution.dAdnSurface[j]) / constants::mu0;
    }
    return K;
}

std::vector<double> surface_field(const BemSolution& solution) {
    auto K = surface_current(solution);
    for (double& k : K) k = std::abs(k) * constants::mu0;
    return K;
}

}  // namespace scmag
