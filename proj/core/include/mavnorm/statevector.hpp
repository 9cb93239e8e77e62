#ifndef MAVNORM_STATEVECTOR_HPP
#define MAVNORM_STATEVECTOR_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace mavnorm {

// Dense amplitude array over the computational basis of N data qubits plus an
// m-qubit counter register. Bit layout of a basis index: data qubit i sits at
// bit i - 1 (qubit 1 least significant), the counter occupies the top m bits.
class StateVector {
public:
    StateVector(int data_qubits, int counter_qubits);

    int data_qubits() const { return data_qubits_; }
    int counter_qubits() const { return counter_qubits_; }
    std::size_t size() const { return amps_.size(); }

    std::complex<double>& operator[](std::size_t i) { return amps_[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return amps_[i]; }
    std::vector<std::complex<double>>& amplitudes() { return amps_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

    double norm() const;

    // Counter value encoded in a basis index, and the data-bit part.
    std::uint64_t counter_of(std::uint64_t index) const { return index >> data_qubits_; }
    std::uint64_t data_of(std::uint64_t index) const { return index & data_mask_; }
    std::uint64_t index_of(std::uint64_t data, std::uint64_t counter) const {
        return data | (counter << data_qubits_);
    }

    // Norm of the projection onto counter value n: |<n|Psi>|.
    double counter_slice_norm(std::uint64_t n) const;

private:
    int data_qubits_;
    int counter_qubits_;
    std::uint64_t data_mask_;
    std::vector<std::complex<double>> amps_;
};

// Dump format: one line per nonzero amplitude, "index<TAB>re<TAB>im", with the
// index in lowercase hexadecimal and 17 significant digits on the floats.
void write_statevector(std::ostream& out, const StateVector& psi);

} // namespace mavnorm

#endif
