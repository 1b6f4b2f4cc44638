#include <benchmark/benchmark.h>

#include "translev/checks.hpp"

using namespace translev;

static void BM_LevelCount(benchmark::State& state) {
    AbelianPGroup A(2, std::vector<int>(static_cast<std::size_t>(state.range(0)), 1));
    for (auto _ : state) {
        FiberCounts fc = level_counts_by_fiber(A, 1, 1);
        benchmark::DoNotOptimize(fc.total);
    }
}
BENCHMARK(BM_LevelCount)->Arg(2)->Arg(3)->Arg(4);

static void BM_TransferQuotient(benchmark::State& state) {
    AbelianPGroup A(2, std::vector<int>(static_cast<std::size_t>(state.range(0)), 1));
    EAlgebra R(A, CoeffMode::IntegerExact, multiplicative_law(2));
    SubgroupFamily F = SubgroupFamily::all_proper(A);
    for (auto _ : state) {
        QuotientModule q = quotient(R, transfer_ideal(R, F));
        benchmark::DoNotOptimize(q.free_rank);
    }
}
BENCHMARK(BM_TransferQuotient)->Arg(2)->Arg(3)->Arg(4);

static void BM_HondaLaw(benchmark::State& state) {
    for (auto _ : state) {
        FglSpec F = honda_law(2, 2, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(F.law.degree());
    }
}
BENCHMARK(BM_HondaLaw)->Arg(8)->Arg(16)->Arg(24);

static void BM_Localize(benchmark::State& state) {
    AbelianPGroup A(2, {static_cast<int>(state.range(0))});
    EAlgebra R(A, CoeffMode::IntegerExact, multiplicative_law(2));
    EulerSet S = euler_set_all(R);
    for (auto _ : state) {
        LocalizationImage loc = localize(R, S);
        benchmark::DoNotOptimize(loc.dimension);
    }
}
BENCHMARK(BM_Localize)->Arg(2)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
