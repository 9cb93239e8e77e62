#include "mavnorm/product_state.hpp"

#include <cmath>
#include <string>

#include "mavnorm/errors.hpp"
#include "mavnorm/numeric.hpp"

namespace mavnorm {

ProductState::ProductState(std::vector<SiteDistribution> sites) : sites_(std::move(sites)) {
    if (sites_.empty()) {
        throw DimensionMismatch("product state needs at least one site");
    }
}

bool ProductState::all_qubits() const {
    for (const auto& s : sites_) {
        if (!s.is_qubit()) return false;
    }
    return true;
}

std::uint64_t ProductState::total_dimension_capped(std::uint64_t cap) const {
    std::uint64_t dim = 1;
    for (const auto& s : sites_) {
        if (dim > cap / s.dimension()) return cap + 1;
        dim *= s.dimension();
    }
    return dim;
}

double log_probability(const ProductState& state, const BasisString& s) {
    if (s.size() != state.site_count()) {
        throw ShapeMismatch("basis string has " + std::to_string(s.size()) +
                            " outcomes for a state of " + std::to_string(state.site_count()) +
                            " sites");
    }
    KahanSum bits;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const SiteDistribution& site = state.site(i);
        if (s[i] >= site.dimension()) {
            throw ShapeMismatch("outcome " + std::to_string(s[i]) + " out of range at site " +
                                std::to_string(i));
        }
        const double p = site.probability(s[i]);
        if (p == 0.0) {
            return infinity();
        }
        bits.add(-std::log2(p));
    }
    return bits.value();
}

double entropy_rate(const ProductState& state) {
    KahanSum total;
    for (const auto& site : state.sites()) {
        total.add(site.entropy_bits());
    }
    return total.value() / static_cast<double>(state.site_count());
}

LogWeightSummary log_weight_summary(const ProductState& state) {
    LogWeightSummary summary;
    summary.reserve(state.site_count());
    for (const auto& site : state.sites()) {
        std::vector<LogWeight> entries;
        entries.reserve(site.dimension());
        for (std::size_t k = 0; k < site.dimension(); ++k) {
            const double p = site.probability(k);
            if (p > 0.0) {
                // -log2(1) may come out as -0.0; keep values nonnegative.
                entries.push_back({std::max(0.0, -std::log2(p)), p});
            }
        }
        summary.push_back(std::move(entries));
    }
    return summary;
}

std::vector<std::complex<double>> enumerate_amplitudes(const ProductState& state,
                                                       std::uint64_t cap) {
    const std::uint64_t dim = state.total_dimension_capped(cap);
    if (dim > cap) {
        throw TooLarge("state space exceeds enumeration cap of " + std::to_string(cap));
    }
    std::vector<std::complex<double>> amps(static_cast<std::size_t>(dim),
                                           std::complex<double>(1.0, 0.0));
    // Tensor build-up: after processing sites 0..i the first `block * d_i`
    // entries hold the amplitudes of that prefix, site 0 fastest-varying.
    std::uint64_t block = 1;
    for (const auto& site : state.sites()) {
        const std::uint64_t d = site.dimension();
        for (std::uint64_t k = d; k-- > 0;) {
            const std::complex<double> c = site.amplitude(static_cast<std::size_t>(k));
            for (std::uint64_t b = block; b-- > 0;) {
                amps[static_cast<std::size_t>(k * block + b)] =
                    amps[static_cast<std::size_t>(b)] * c;
            }
        }
        block *= d;
    }
    return amps;
}

} // namespace mavnorm
