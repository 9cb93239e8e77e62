#include <benchmark/benchmark.h>

#include <vector>

#include "mavnorm/bounds.hpp"
#include "mavnorm/product_state.hpp"
#include "mavnorm/random_states.hpp"
#include "mavnorm/rng.hpp"
#include "mavnorm/site_distribution.hpp"
#include "mavnorm/tails.hpp"

namespace {

using namespace mavnorm;

void BM_BinomialMaverickNorm(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(binomial_maverick_norm(0.3, n, 0.05));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_BinomialMaverickNorm)->Arg(1000)->Arg(10000)->Arg(100000)->Arg(1000000)
    ->Complexity(benchmark::oN);

void BM_EntropyBracketIid(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const ProductState chain(
        std::vector<SiteDistribution>(n, make_qubit_p(0.25)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dp_entropy_tail_bracket(chain, 0.02, 1e-4));
    }
}
BENCHMARK(BM_EntropyBracketIid)->Arg(1000)->Arg(10000)->Arg(100000);

// Distinct sites defeat the multinomial grouping, so this configuration
// spends its time in convolution and emergency coarsening.
void BM_EntropyBracketHeterogeneous(benchmark::State& state) {
    SplitMix64 rng(7);
    const ProductState chain =
        random_product_state(rng, static_cast<std::size_t>(state.range(0)), 2, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dp_entropy_tail_bracket(chain, 0.05, 1e-3));
    }
}
BENCHMARK(BM_EntropyBracketHeterogeneous)->Arg(50)->Arg(100);

void BM_BruteforceEntropy(benchmark::State& state) {
    SplitMix64 rng(11);
    const ProductState chain =
        random_product_state(rng, static_cast<std::size_t>(state.range(0)), 2, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            bruteforce_maverick_norm(chain, {TailMode::EntropyRate, 0.1}));
    }
}
BENCHMARK(BM_BruteforceEntropy)->Arg(12)->Arg(16);

void BM_RepeatedStateMinimum(benchmark::State& state) {
    const SiteDistribution site = make_qubit_p(0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(repeated_state_minimum(site, state.range(0)));
    }
}
BENCHMARK(BM_RepeatedStateMinimum)->Arg(100)->Arg(1000)->Arg(10000);

void BM_ProductChebyshev(benchmark::State& state) {
    SplitMix64 rng(13);
    const ProductState chain =
        random_product_state(rng, static_cast<std::size_t>(state.range(0)), 2, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(product_chebyshev_bound(chain, 0.05));
    }
}
BENCHMARK(BM_ProductChebyshev)->Arg(1000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();
