#include "twave/bea.hpp"
#include "twave/dtw.hpp"
#include "twave/pdesim.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace twave;

namespace {

void BM_Dft(benchmark::State& state)
{
    const auto M = static_cast<std::size_t>(state.range(0));
    std::vector<double> x(M);
    std::mt19937 gen(1);
    std::uniform_real_distribution<double> u(-1, 1);
    for (auto& v : x) v = u(gen);
    for (auto _ : state) benchmark::DoNotOptimize(dft(x));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dft)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18)->Arg(3 * 5 * 7 * 11 * 13)->Complexity();

void BM_McKeanDiagnostics(benchmark::State& state)
{
    const WaveParams p{0.5, 0.4, 0.2, 5.0 * std::numbers::sqrt2};
    for (auto _ : state) benchmark::DoNotOptimize(mckeanDiagnostics(p, state.range(0)));
}
BENCHMARK(BM_McKeanDiagnostics)->Arg(1 << 16)->Arg(1 << 19)->Unit(benchmark::kMillisecond);

void BM_Newton(benchmark::State& state)
{
    const auto s = Nonlinearity::sine();
    const int N = static_cast<int>(state.range(0));
    const WaveParams p{1.3, 1.0, 1.0 / std::numbers::sqrt2, 15.0832 / 2};
    const auto seed = defaultSeed(s, p.c, p.period(), N);
    for (auto _ : state) benchmark::DoNotOptimize(smoothNewtonWave(s, p, N, seed));
}
BENCHMARK(BM_Newton)->Arg(32)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Sawtooth(benchmark::State& state)
{
    const WaveParams p{0.5, 0.4, 0.4 / std::numbers::sqrt2, 10.0};
    for (auto _ : state) benchmark::DoNotOptimize(sawtoothDiscreteWave(p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Sawtooth)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_LeapfrogStep(benchmark::State& state)
{
    const auto M = static_cast<std::size_t>(state.range(0));
    std::vector<double> a(M), b(M);
    for (std::size_t i = 0; i < M; ++i) {
        a[i] = std::sin(0.01 * static_cast<double>(i));
        b[i] = std::sin(0.01 * static_cast<double>(i) + 0.001);
    }
    auto f = makeField(0.02, 0.01, a, b);
    const auto nl = Nonlinearity::sine();
    for (auto _ : state) {
        f = leapfrogStep(nl, f);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LeapfrogStep)->Arg(1 << 10)->Arg(1 << 16);

void BM_LobattoStep(benchmark::State& state)
{
    const SteadyStepper st(Nonlinearity::appendix(), SteadyScheme::LobattoIIIA3, 0.1);
    std::array<double, 2> z{-2.8, 0.01};
    for (auto _ : state) benchmark::DoNotOptimize(z = st.step(z));
}
BENCHMARK(BM_LobattoStep);

void BM_ModifiedField(benchmark::State& state)
{
    const ModifiedEquation me(Nonlinearity::sine(), 1.3, 0.2, 0.2, Order::O6);
    double y = 0.3;
    for (auto _ : state) benchmark::DoNotOptimize(y = 0.3 + 1e-9 * modifiedField(me, y, 0.1));
}
BENCHMARK(BM_ModifiedField);

} // namespace

BENCHMARK_MAIN();
