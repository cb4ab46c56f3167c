// Serial reference vs OpenMP kernels: BEM assembly, BEM field evaluation and
// thin-sheet field maps.

#include <benchmark/benchmark.h>

#include "scmag/bem_kernels.hpp"
#include "scmag/bem_solver.hpp"
#include "scmag/field_source.hpp"
#include "scmag/sheet_models.hpp"

using namespace scmag;

namespace {

Execution mode(const benchmark::State& st) { return st.range(1) ? Execution::Parallel : Execution::Serial; }

void BM_AssembleScalar(benchmark::State& st) {
    SurfaceMesh m = mesh_rounded_rectangle({1.0, 0.08, 0.031}, static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(assemble_scalar_matrix(m, mode(st)));
}

void BM_AssembleVector(benchmark::State& st) {
    SurfaceMesh m = mesh_rounded_rectangle({1.0, 0.08, 0.031}, static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(assemble_vector_matrix(m, 10 * m.perimeter(), mode(st)));
}

void BM_BemFieldMap(benchmark::State& st) {
    BemProblem p{mesh_rounded_rectangle({1.0, 0.08, 0.031}, static_cast<std::size_t>(st.range(0))), {-1e-4, 0.0}, 1.0};
    BemSolution sol = solve(p);
    Grid g{-3.0, 3.0, 41, 0.1, 3.0, 31};
    auto pts = g.points();
    for (auto _ : st) benchmark::DoNotOptimize(evaluate_field(sol, pts, mode(st)));
}

void BM_SheetFieldMap(benchmark::State& st) {
    SheetSource src(meissner_profile(1.0, 1.0));
    Grid g{-3.0, 3.0, static_cast<std::size_t>(st.range(0)), 0.01, 3.0, static_cast<std::size_t>(st.range(0))};
    for (auto _ : st) benchmark::DoNotOptimize(field_map(src, {-1e-7, 0.0}, g, mode(st)));
}

}  // namespace

BENCHMARK(BM_AssembleScalar)->ArgsProduct({{420, 1024}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleVector)->ArgsProduct({{420, 1024}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BemFieldMap)->ArgsProduct({{420}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SheetFieldMap)->ArgsProduct({{41}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
