#include <benchmark/benchmark.h>

#include "mbl/mbl.hpp"

namespace {

mbl::SystemParams fig5a(int fock_dim) {
    mbl::SystemParams p;
    p.delta_m = p.delta_s = 9.8;
    p.g_ms = 19.6;
    p.omega_s = 0.06;
    p.omega_d = 0.01;
    p.kappa_m = p.kappa_s = 0.15;
    p.fock_dim = fock_dim;
    return p;
}

void BM_BuildLiouvillian(benchmark::State& state) {
    const auto p = fig5a(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(mbl::build_liouvillian(p));
}
BENCHMARK(BM_BuildLiouvillian)->Arg(4)->Arg(6)->Arg(8);

void BM_SteadyState(benchmark::State& state) {
    const auto p = fig5a(static_cast<int>(state.range(0)));
    const auto L = mbl::build_liouvillian(p);
    for (auto _ : state) benchmark::DoNotOptimize(mbl::steady_state(L));
}
BENCHMARK(BM_SteadyState)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

// one sweep point end to end, as the sweep workers run it
void BM_NumericG2Point(benchmark::State& state) {
    const auto p = fig5a(6);
    for (auto _ : state) {
        const auto rho = mbl::steady_state(mbl::build_liouvillian(p));
        benchmark::DoNotOptimize(mbl::g2_zero(rho, p.space()));
    }
}
BENCHMARK(BM_NumericG2Point)->Unit(benchmark::kMillisecond);

void BM_AnalyticG2(benchmark::State& state) {
    const auto p = fig5a(6);
    for (auto _ : state) benchmark::DoNotOptimize(mbl::analytic_g2(p));
}
BENCHMARK(BM_AnalyticG2);

void BM_Evolve(benchmark::State& state) {
    const auto p = fig5a(4);
    const auto L = mbl::build_liouvillian(p);
    const auto rho0 = mbl::DensityMatrix::pure(p.space(), mbl::QubitLevel::ground, 0);
    const std::vector<double> times{0.0, 50.0};
    for (auto _ : state) benchmark::DoNotOptimize(mbl::evolve(L, rho0, times, {}));
}
BENCHMARK(BM_Evolve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
