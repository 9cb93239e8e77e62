#include "mavnorm/random_states.hpp"

#include <cmath>
#include <limits>

#include "mavnorm/errors.hpp"
#include "mavnorm/numeric.hpp"

namespace mavnorm {

namespace {

std::vector<std::complex<double>> gaussian_unit_vector(SplitMix64& rng, std::size_t dimension) {
    if (dimension < 1) {
        throw OutOfRange("dimension must be at least 1");
    }
    std::vector<std::complex<double>> amps(dimension);
    while (true) {
        KahanSum norm2;
        for (auto& a : amps) {
            a = {rng.next_gaussian(), rng.next_gaussian()};
            norm2.add(std::norm(a));
        }
        const double scale = std::sqrt(norm2.value());
        if (scale > 0.0) {
            for (auto& a : amps) a /= scale;
            return amps;
        }
        // all-zero draw has probability zero; redraw just in case
    }
}

} // namespace

SiteDistribution random_site(SplitMix64& rng, std::uint32_t dimension) {
    return SiteDistribution(gaussian_unit_vector(rng, dimension));
}

ProductState random_product_state(SplitMix64& rng, std::size_t n_sites, std::uint32_t dim_lo,
                                  std::uint32_t dim_hi) {
    if (dim_lo < 1 || dim_hi < dim_lo) {
        throw OutOfRange("dimension range must satisfy 1 <= lo <= hi");
    }
    std::vector<SiteDistribution> sites;
    sites.reserve(n_sites);
    for (std::size_t i = 0; i < n_sites; ++i) {
        const auto d = static_cast<std::uint32_t>(rng.next_index(dim_lo, dim_hi));
        sites.push_back(random_site(rng, d));
    }
    return ProductState(std::move(sites));
}

std::vector<std::complex<double>> random_statevector(SplitMix64& rng, std::size_t dimension) {
    return gaussian_unit_vector(rng, dimension);
}

DiagonalObservable random_observable(SplitMix64& rng, std::size_t dimension, double lo,
                                     double hi) {
    std::vector<double> values(dimension);
    for (auto& v : values) v = rng.next_uniform(lo, hi);
    return DiagonalObservable(std::move(values));
}

TrialSummary run_markov_trials(std::uint64_t base_seed, std::int64_t trials, int max_qubits) {
    if (trials < 1 || max_qubits < 1 || max_qubits > 20) {
        throw OutOfRange("need trials >= 1 and 1 <= max_qubits <= 20");
    }
    TrialSummary summary{trials, 0, true, std::numeric_limits<double>::infinity()};
    for (std::int64_t t = 0; t < trials; ++t) {
        SplitMix64 rng(base_seed + static_cast<std::uint64_t>(t));
        const auto qubits = rng.next_index(1, static_cast<std::uint64_t>(max_qubits));
        const std::size_t dim = std::size_t{1} << qubits;
        const auto psi = random_statevector(rng, dim);
        const auto f = random_observable(rng, dim, 0.0, 4.0);
        const double a = rng.next_uniform(0.25, 4.0);
        const BoundCheckResult r = markov_check(psi, f, a);
        if (!r.holds) {
            summary.failures += 1;
            summary.all_hold = false;
        }
        summary.worst_slack = std::min(summary.worst_slack, r.slack);
    }
    return summary;
}

TrialSummary run_chebyshev_trials(std::uint64_t base_seed, std::int64_t trials,
                                  int max_qubits) {
    if (trials < 1 || max_qubits < 1 || max_qubits > 20) {
        throw OutOfRange("need trials >= 1 and 1 <= max_qubits <= 20");
    }
    TrialSummary summary{trials, 0, true, std::numeric_limits<double>::infinity()};
    for (std::int64_t t = 0; t < trials; ++t) {
        SplitMix64 rng(base_seed + static_cast<std::uint64_t>(t));
        const auto qubits = rng.next_index(1, static_cast<std::uint64_t>(max_qubits));
        const std::size_t dim = std::size_t{1} << qubits;
        const auto psi = random_statevector(rng, dim);
        const auto y = random_observable(rng, dim, -2.0, 2.0);
        const double epsilon = rng.next_uniform(0.05, 1.0);
        const BoundCheckResult r = chebyshev_check(psi, y, epsilon);
        if (!r.holds) {
            summary.failures += 1;
            summary.all_hold = false;
        }
        summary.worst_slack = std::min(summary.worst_slack, r.slack);
    }
    return summary;
}

} // namespace mavnorm
