#include "support/examples.hpp"
#include "support/random_poly.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace oresub;
using namespace examples;

namespace {

void BM_SolveRecurrence(benchmark::State& state) {
    auto sys = recurrence_system();
    for (auto _ : state) benchmark::DoNotOptimize(solve_system(sys));
}
BENCHMARK(BM_SolveRecurrence)->Unit(benchmark::kMillisecond);

void BM_SolveMixed(benchmark::State& state) {
    auto sys = mixed_system();
    for (auto _ : state) benchmark::DoNotOptimize(solve_system(sys));
}
BENCHMARK(BM_SolveMixed)->Unit(benchmark::kMillisecond);

// Each argument picks the first map of the processing order.
void BM_SolveTriple(benchmark::State& state) {
    auto sys = triple_system();
    SolveOptions opt;
    auto first = static_cast<std::size_t>(state.range(0));
    opt.order = {first, (first + 1) % 3, (first + 2) % 3};
    for (auto _ : state) benchmark::DoNotOptimize(solve_system(sys, opt));
}
BENCHMARK(BM_SolveTriple)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_Integrability(benchmark::State& state) {
    auto sys = triple_system();
    for (auto _ : state) check_integrability(sys, vars());
}
BENCHMARK(BM_Integrability)->Unit(benchmark::kMillisecond);

void BM_HypergeometricSolutions(benchmark::State& state) {
    auto sys = recurrence_system();
    auto eq = minimal_scalar_equation(sys.b[0], sys.delta[0], 0);
    ScalarOperator op{sys.delta[0], eq.coeffs, std::nullopt};
    op.coeffs.push_back(RatFunc(1));
    for (auto _ : state) benchmark::DoNotOptimize(hypergeometric_solutions(op));
}
BENCHMARK(BM_HypergeometricSolutions)->Unit(benchmark::kMillisecond);

void BM_DependenceOverConstants(benchmark::State& state) {
    DeltaSet delta({DeltaMap::derivation("dx", {{X, Rational(1)}}), DeltaMap::derivation("dy", {{Y, Rational(1)}})});
    std::mt19937 rng(3);
    std::vector<RatFunc> vals;
    for (int i = 0; i < 3; ++i) vals.push_back(testing::random_ratfunc(rng, 2, 2, 3));
    vals.push_back(vals[0] + RatFunc(2) * vals[1]);
    for (auto _ : state) benchmark::DoNotOptimize(dependence_over_constants(vals, delta));
}
BENCHMARK(BM_DependenceOverConstants)->Unit(benchmark::kMicrosecond);

void BM_RatFuncArithmetic(benchmark::State& state) {
    std::mt19937 rng(5);
    auto a = testing::random_ratfunc(rng, 3, static_cast<unsigned>(state.range(0)), 4);
    auto b = testing::random_ratfunc(rng, 3, static_cast<unsigned>(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(a * b + a / b);
}
BENCHMARK(BM_RatFuncArithmetic)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
