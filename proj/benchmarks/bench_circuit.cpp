#include <benchmark/benchmark.h>

#include "mavnorm/counter_circuit.hpp"
#include "mavnorm/site_distribution.hpp"

namespace {

using namespace mavnorm;

void BM_RunCounter(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const CounterCircuit circuit = build_counter_circuit(n);
    const SiteDistribution qubit = make_qubit_p(0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_counter(circuit, qubit));
    }
    // Amplitudes touched per iteration: 2^(N + counter) per gate.
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n) *
                            (1LL << (circuit.data_qubits + circuit.counter_qubits)));
}
BENCHMARK(BM_RunCounter)->DenseRange(8, 14, 2);

void BM_ClosedFormScan(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    for (auto _ : state) {
        double acc = 0.0;
        for (std::int64_t c = 0; c <= n; ++c) {
            acc += closed_form_counter_amplitude(0.6, 0.8, n, c);
        }
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_ClosedFormScan)->Arg(100)->Arg(10000);

} // namespace
