#include "mavnorm/statevector.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "mavnorm/errors.hpp"
#include "mavnorm/numeric.hpp"

namespace mavnorm {

StateVector::StateVector(int data_qubits, int counter_qubits)
    : data_qubits_(data_qubits), counter_qubits_(counter_qubits) {
    if (data_qubits < 1 || counter_qubits < 0 || data_qubits + counter_qubits > 30) {
        throw TooLarge("statevector of " + std::to_string(data_qubits + counter_qubits) +
                       " qubits is outside the supported range");
    }
    data_mask_ = (std::uint64_t{1} << data_qubits_) - 1;
    amps_.assign(std::size_t{1} << (data_qubits_ + counter_qubits_), {0.0, 0.0});
}

double StateVector::norm() const {
    KahanSum s;
    for (const auto& a : amps_) {
        s.add(std::norm(a));
    }
    return std::sqrt(s.value());
}

double StateVector::counter_slice_norm(std::uint64_t n) const {
    const std::uint64_t base = n << data_qubits_;
    KahanSum s;
    for (std::uint64_t d = 0; d <= data_mask_; ++d) {
        s.add(std::norm(amps_[static_cast<std::size_t>(base | d)]));
    }
    return std::sqrt(s.value());
}

void write_statevector(std::ostream& out, const StateVector& psi) {
    char line[96];
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const auto& a = psi[i];
        if (a.real() == 0.0 && a.imag() == 0.0) continue;
        std::snprintf(line, sizeof(line), "%llx\t%.17g\t%.17g\n",
                      static_cast<unsigned long long>(i), a.real(), a.imag());
        out << line;
    }
}

} // namespace mavnorm
