#include "mavnorm/counter_circuit.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "mavnorm/errors.hpp"
#include "mavnorm/numeric.hpp"

namespace mavnorm {

CounterCircuit build_counter_circuit(int n) {
    if (n < 1) {
        throw OutOfRange("counter circuit needs at least one data qubit");
    }
    if (n > kMaxCounterQubits) {
        throw TooLarge("counter circuit capped at N = " + std::to_string(kMaxCounterQubits));
    }
    // ceil(log2(n+1)): width of the largest reachable count.
    const int m = std::bit_width(static_cast<unsigned>(n));
    CounterCircuit circuit{n, m, {}};
    circuit.gates.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        circuit.gates.push_back({i, n, m});
    }
    return circuit;
}

std::uint64_t permute_basis_index(const CounterCircuit& circuit, std::uint64_t index) {
    for (const auto& gate : circuit.gates) {
        if ((index >> gate.control_bit) & 1u) {
            const std::uint64_t span_mask = ((std::uint64_t{1} << gate.counter_width) - 1)
                                            << gate.counter_lsb;
            const std::uint64_t value = (index & span_mask) >> gate.counter_lsb;
            const std::uint64_t next =
                (value + 1) & ((std::uint64_t{1} << gate.counter_width) - 1);
            index = (index & ~span_mask) | (next << gate.counter_lsb);
        }
    }
    return index;
}

void apply_controlled_increment(StateVector& psi, const ControlledIncrement& gate) {
    const std::uint64_t span = std::uint64_t{1} << gate.counter_width;
    const std::uint64_t stride = std::uint64_t{1} << gate.counter_lsb;
    const std::uint64_t low_count = stride; // indices below the counter span
    for (std::uint64_t low = 0; low < low_count; ++low) {
        if (((low >> gate.control_bit) & 1u) == 0) continue;
        // new[c] = old[c-1], new[0] = old[2^m - 1]: rotate the counter slice.
        auto& amps = psi.amplitudes();
        std::complex<double> carry = amps[static_cast<std::size_t>(low + (span - 1) * stride)];
        for (std::uint64_t c = span - 1; c > 0; --c) {
            amps[static_cast<std::size_t>(low + c * stride)] =
                amps[static_cast<std::size_t>(low + (c - 1) * stride)];
        }
        amps[static_cast<std::size_t>(low)] = carry;
    }
}

StateVector make_counter_input(const SiteDistribution& qubit, const CounterCircuit& circuit) {
    if (!qubit.is_qubit()) {
        throw DimensionMismatch("counter circuit inputs must be qubits (d = 2)");
    }
    const int n = circuit.data_qubits;
    StateVector psi(n, circuit.counter_qubits);
    const std::complex<double> beta = qubit.amplitude(0);
    const std::complex<double> alpha = qubit.amplitude(1);
    // amp(x) = alpha^popcount(x) * beta^(N - popcount(x)), counter = 0.
    std::vector<std::complex<double>> alpha_pow(static_cast<std::size_t>(n) + 1);
    std::vector<std::complex<double>> beta_pow(static_cast<std::size_t>(n) + 1);
    alpha_pow[0] = beta_pow[0] = {1.0, 0.0};
    for (int k = 1; k <= n; ++k) {
        alpha_pow[k] = alpha_pow[k - 1] * alpha;
        beta_pow[k] = beta_pow[k - 1] * beta;
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < dim; ++x) {
        const int ones = std::popcount(x);
        psi[static_cast<std::size_t>(x)] = alpha_pow[ones] * beta_pow[n - ones];
    }
    return psi;
}

StateVector run_counter(const CounterCircuit& circuit, const SiteDistribution& qubit) {
    StateVector psi = make_counter_input(qubit, circuit);
    for (const auto& gate : circuit.gates) {
        apply_controlled_increment(psi, gate);
    }
    return psi;
}

double closed_form_counter_amplitude(std::complex<double> alpha, std::complex<double> beta,
                                     std::int64_t n_total, std::int64_t n_ones) {
    if (n_total < 1) {
        throw OutOfRange("need at least one measured qubit");
    }
    if (n_ones < 0 || n_ones > n_total) {
        throw OutOfRange("count " + std::to_string(n_ones) + " outside 0.." +
                         std::to_string(n_total));
    }
    const double pa = std::norm(alpha);
    const double pb = std::norm(beta);
    if (std::abs(pa + pb - 1.0) > kInputNormTol) {
        throw NotNormalized("|alpha|^2 + |beta|^2 must be 1 within 1e-10");
    }
    if (pa == 0.0 && n_ones > 0) return 0.0;
    if (pb == 0.0 && n_ones < n_total) return 0.0;
    const double nd = static_cast<double>(n_total);
    const double kd = static_cast<double>(n_ones);
    double log_weight = std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
    if (n_ones > 0) log_weight += kd * std::log(pa);
    if (n_ones < n_total) log_weight += (nd - kd) * std::log(pb);
    return std::exp(0.5 * log_weight);
}

std::vector<ControlledNot> gate_level_n3() {
    // Qubits 0..2 are data, 3 is the low counter bit, 4 the high one. Each
    // block is carry-then-toggle, the standard ripple increment.
    std::vector<ControlledNot> gates;
    for (int data = 0; data < 3; ++data) {
        gates.push_back({{data, 3}, 4});
        gates.push_back({{data}, 3});
    }
    return gates;
}

void apply_controlled_nots(StateVector& psi, const std::vector<ControlledNot>& gates) {
    auto& amps = psi.amplitudes();
    for (const auto& gate : gates) {
        const std::uint64_t target_bit = std::uint64_t{1} << gate.target;
        for (std::uint64_t z = 0; z < amps.size(); ++z) {
            if (z & target_bit) continue;
            bool fire = true;
            for (int c : gate.controls) {
                if (((z >> c) & 1u) == 0) {
                    fire = false;
                    break;
                }
            }
            if (fire) {
                std::swap(amps[static_cast<std::size_t>(z)],
                          amps[static_cast<std::size_t>(z | target_bit)]);
            }
        }
    }
}

} // namespace mavnorm
