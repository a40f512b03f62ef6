#include "digiweyl/digits.hpp"
#include "digiweyl/mvt.hpp"
#include "digiweyl/weyl.hpp"

#include <benchmark/benchmark.h>

using namespace digiweyl;

namespace {

const Polynomial& cubic() {
    static const Polynomial f = Polynomial::parse("root:2:3;rat:1/7;root:3:2");
    return f;
}

template <std::size_t W>
void BM_DifferenceStream(benchmark::State& state) {
    const auto q = quantize<W>(cubic());
    for (auto _ : state) {
        DifferenceStream<W> st(q, 1, 0);
        for (int i = 0; i < 1 << 16; ++i, st.advance()) {
            benchmark::DoNotOptimize(st.value());
        }
    }
    state.SetItemsProcessed(state.iterations() << 16);
}
BENCHMARK(BM_DifferenceStream<2>);
BENCHMARK(BM_DifferenceStream<3>);
BENCHMARK(BM_DifferenceStream<4>);

void BM_Horner(benchmark::State& state) {
    const auto q = quantize<2>(cubic());
    for (auto _ : state) {
        for (std::uint64_t n = 0; n < 1 << 16; ++n) {
            benchmark::DoNotOptimize(frac_eval(q, 1, n));
        }
    }
    state.SetItemsProcessed(state.iterations() << 16);
}
BENCHMARK(BM_Horner);

void BM_GosperEnumerate(benchmark::State& state) {
    const auto spec = DigitClassSpec::fixed_sum(24, 10);
    for (auto _ : state) {
        std::uint64_t acc = 0;
        for_each_member(spec, [&](std::uint64_t n) { acc ^= n; });
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_GosperEnumerate)->Unit(benchmark::kMillisecond);

void BM_FullRangeSum(benchmark::State& state) {
    const WeylEngine eng(cubic(), {.threads = 1});
    const auto r = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(eng.full_range_sum(1, r));
    }
    state.SetItemsProcessed(state.iterations() << r);
}
BENCHMARK(BM_FullRangeSum)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_FixedDigitSum(benchmark::State& state) {
    const WeylEngine eng(cubic(), {.threads = 1});
    for (auto _ : state) {
        benchmark::DoNotOptimize(eng.sum_fixed_digit(1, 22, 9));
    }
}
BENCHMARK(BM_FixedDigitSum)->Unit(benchmark::kMillisecond);

void BM_Vinogradov(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(vinogradov_count(2, 3, static_cast<std::uint64_t>(state.range(0))));
    }
}
BENCHMARK(BM_Vinogradov)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
