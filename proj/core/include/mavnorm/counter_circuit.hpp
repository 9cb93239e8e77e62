#ifndef MAVNORM_COUNTER_CIRCUIT_HPP
#define MAVNORM_COUNTER_CIRCUIT_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "mavnorm/site_distribution.hpp"
#include "mavnorm/statevector.hpp"

namespace mavnorm {

// One controlled-[ADD 1] gate: increments the counter span when the control
// qubit is set, modulo 2^width.
struct ControlledIncrement {
    int control_bit;
    int counter_lsb;
    int counter_width;
};

// Hamming-weight counting circuit: N controlled-increment gates, gate i
// controlled on data qubit i, all targeting one counter register wide enough
// (ceil(log2(N+1)) qubits) that counting 0..N never overflows.
struct CounterCircuit {
    int data_qubits;
    int counter_qubits;
    std::vector<ControlledIncrement> gates;
};

// Builds the counting circuit for N data qubits. Throws TooLarge for N > 25.
CounterCircuit build_counter_circuit(int n);

// Image of one computational basis index under the whole circuit, applying
// each gate as the basis permutation it is.
std::uint64_t permute_basis_index(const CounterCircuit& circuit, std::uint64_t index);

// Applies one controlled increment to a dense statevector in place (a cyclic
// shift of the counter slice for every data index with the control bit set).
void apply_controlled_increment(StateVector& psi, const ControlledIncrement& gate);

// Initial state (alpha|1> + beta|0>)^N tensor |0...0> on the counter.
StateVector make_counter_input(const SiteDistribution& qubit, const CounterCircuit& circuit);

// Runs the counting circuit on N copies of `qubit` with the counter cleared.
// Throws DimensionMismatch unless the site is a qubit.
StateVector run_counter(const CounterCircuit& circuit, const SiteDistribution& qubit);

// |<n|Psi_N>| = sqrt(|alpha|^(2n) |beta|^(2(N-n)) C(N,n)), evaluated in log
// space (log-gamma binomial coefficient) so it stays finite up to N = 1e6.
// Throws OutOfRange for n outside 0..N, NotNormalized off the unit circle.
double closed_form_counter_amplitude(std::complex<double> alpha, std::complex<double> beta,
                                     std::int64_t n_total, std::int64_t n_ones);

// One X gate with zero or more controls.
struct ControlledNot {
    std::vector<int> controls;
    int target;
};

// The N = 3 counter as elementary gates on 5 qubits (3 data + 2 counter): for
// each data qubit, a Toffoli carrying the low counter bit into the high one,
// then a CNOT toggling the low bit. Acts identically to the permutation
// semantics of the N = 3 CounterCircuit on all 32 basis states.
std::vector<ControlledNot> gate_level_n3();

// Applies controlled-NOT gates to a dense statevector in order.
void apply_controlled_nots(StateVector& psi, const std::vector<ControlledNot>& gates);

} // namespace mavnorm

#endif
