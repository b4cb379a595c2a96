#include <benchmark/benchmark.h>

#include "rydmech/builders.hpp"
#include "rydmech/liouvillian.hpp"
#include "rydmech/trajectories.hpp"

using namespace rydmech;

namespace {

PhysicalParams bench_params(int n_atoms) {
    PhysicalParams p;
    p.g = 1.0;
    p.G = 4.0;
    p.Omega = 4.0;
    p.Delta_c = 12.0;
    p.Delta_e = 12.0;
    p.Gamma_e = 0.5;
    p.kappa = 0.1;
    p.Gamma_r = 0.01;
    p.n_atoms = n_atoms;
    return p;
}

}  // namespace

static void GeneratorApply(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    LindbladModel model = build_microscopic(bench_params(n), {2, 2});
    Mat rho = Mat::Identity(model.dim(), model.dim()) / static_cast<double>(model.dim());
    for (auto _ : state) {
        Mat out = model.apply_generator(rho);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetComplexityN(model.dim());
}
BENCHMARK(GeneratorApply)->Arg(2)->Arg(3)->Arg(4)->Complexity();

static void LiouvillianAssembly(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    LindbladModel model = build_microscopic(bench_params(n), {2, 2});
    for (auto _ : state) {
        Superoperator l = liouvillian(model);
        benchmark::DoNotOptimize(l.matrix.data());
    }
}
BENCHMARK(LiouvillianAssembly)->Arg(2)->Arg(3);

static void TrajectoryStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    LindbladModel model = build_microscopic(bench_params(n), {2, 2});
    const CollectiveBasis coll(n);
    const MicroscopicBasis micro(n, true);
    const SymmetricEmbed iso(coll, micro);
    Vec psi0 = Vec::Zero(model.dim());
    const Vec lifted = iso.lift(basis_state(coll.space(), coll.index_ER(0)));
    for (long a = 0; a < micro.dim(); ++a)
        if (std::abs(lifted(a)) > 0) psi0(model.space().flatten({0, 0, a})) = lifted(a);

    std::vector<double> grid = {0.0, 1.0};
    std::uint64_t seed = 1;
    for (auto _ : state) {
        TrajectoryResult r = evolve_trajectories(model, psi0, grid, 1, seed++, {}, {});
        benchmark::DoNotOptimize(r.max_norm_defect);
    }
}
BENCHMARK(TrajectoryStep)->Arg(4)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
