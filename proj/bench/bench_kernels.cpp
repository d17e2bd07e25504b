// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "emdsvr/features.hpp"
#include "emdsvr/pso.hpp"
#include "emdsvr/svr.hpp"

using namespace emdsvr;

namespace {

PatternMatrix patterns(std::size_t n, std::size_t dim) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    PatternMatrix x(n, std::vector<double>(dim));
    for (auto& r : x) for (auto& v : r) v = g(rng);
    return x;
}

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<double> v(n);
    for (auto& x : v) x = g(rng);
    return v;
}

void BM_KernelMatrix(benchmark::State& st) {
    const auto x = patterns(static_cast<std::size_t>(st.range(0)), 12);
    for (auto _ : st) benchmark::DoNotOptimize(kernel_matrix(KernelSpec::rbf(0.1), x));
}

void BM_KernelMatrixSerial(benchmark::State& st) {
    const auto x = patterns(static_cast<std::size_t>(st.range(0)), 12);
    for (auto _ : st) benchmark::DoNotOptimize(serial::kernel_matrix(KernelSpec::rbf(0.1), x));
}

void BM_MutualInformation(benchmark::State& st) {
    const auto a = noise(static_cast<std::size_t>(st.range(0)), 1);
    const auto b = noise(static_cast<std::size_t>(st.range(0)), 2);
    for (auto _ : st) benchmark::DoNotOptimize(mutual_information(a, b));
}

void BM_MutualInformationSerial(benchmark::State& st) {
    const auto a = noise(static_cast<std::size_t>(st.range(0)), 1);
    const auto b = noise(static_cast<std::size_t>(st.range(0)), 2);
    for (auto _ : st) benchmark::DoNotOptimize(serial::mutual_information(a, b));
}

// PSO over a cross-validated SVR, the expensive objective used in fitting.
struct Tuning {
    PatternMatrix x = patterns(100, 4);
    std::vector<double> y = noise(100, 3);
    PsoConfig cfg = [] {
        PsoConfig c;
        c.swarm_size = 4;
        c.iterations = 2;
        return c;
    }();
    Objective f = [this](std::span<const double> p) {
        return cv_objective(x, y, params_from_position(p, KernelSpec::Kind::Rbf), 5);
    };
};

void BM_Pso(benchmark::State& st) {
    const Tuning t;
    for (auto _ : st) benchmark::DoNotOptimize(optimize(t.f, t.cfg));
}

void BM_PsoSerial(benchmark::State& st) {
    const Tuning t;
    for (auto _ : st) benchmark::DoNotOptimize(serial::optimize(t.f, t.cfg));
}

}  // namespace

BENCHMARK(BM_KernelMatrix)->Arg(100)->Arg(400);
BENCHMARK(BM_KernelMatrixSerial)->Arg(100)->Arg(400);
BENCHMARK(BM_MutualInformation)->Arg(120)->Arg(500);
BENCHMARK(BM_MutualInformationSerial)->Arg(120)->Arg(500);
BENCHMARK(BM_Pso)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PsoSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
