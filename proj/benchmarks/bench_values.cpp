#include <benchmark/benchmark.h>

#include "dynes/values/neg_ops.hpp"

using namespace dynes;

static void BM_InexactDivide(benchmark::State& state) {
    const Value a(Inexact{120, 4});
    const Value b(Inexact{7, 0.5});
    for (auto _ : state) benchmark::DoNotOptimize(neg_arith(ArithOp::Div, a, b));
}
BENCHMARK(BM_InexactDivide);

static void BM_RangeCompare(benchmark::State& state) {
    const Value a(Range{0, 10});
    const Value b(Inexact{6, 3});
    for (auto _ : state) benchmark::DoNotOptimize(neg_compare(CompareOp::Gt, a, b));
}
BENCHMARK(BM_RangeCompare);

static void BM_FuzzyCompare(benchmark::State& state) {
    const Value a(MembershipFunction::trapezoid(0, 2, 5, 9));
    const Value b(MembershipFunction::triangle(4, 6, 8));
    for (auto _ : state) benchmark::DoNotOptimize(neg_compare(CompareOp::Eq, a, b));
}
BENCHMARK(BM_FuzzyCompare);

static void BM_AlphaCutMul(benchmark::State& state) {
    const auto a = MembershipFunction::triangle(1, 2, 3);
    const auto b = MembershipFunction::trapezoid(10, 12, 18, 20);
    const int levels = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(extend_arith(ArithOp::Mul, a, b, levels));
}
BENCHMARK(BM_AlphaCutMul)->Arg(5)->Arg(11)->Arg(41);

static void BM_Defuzzify(benchmark::State& state) {
    const auto mf = MembershipFunction({{0, 0}, {2, 1}, {3, 0.4}, {5, 0.4}, {6, 1}, {9, 0}});
    for (auto _ : state) benchmark::DoNotOptimize(defuzzify(mf));
}
BENCHMARK(BM_Defuzzify);
