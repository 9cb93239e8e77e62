#ifndef MAVNORM_RANDOM_STATES_HPP
#define MAVNORM_RANDOM_STATES_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "mavnorm/bounds.hpp"
#include "mavnorm/product_state.hpp"
#include "mavnorm/rng.hpp"
#include "mavnorm/site_distribution.hpp"

namespace mavnorm {

// Amplitudes drawn as independent standard complex Gaussians, then
// normalized (the Haar marginal for a single ket).
SiteDistribution random_site(SplitMix64& rng, std::uint32_t dimension);

ProductState random_product_state(SplitMix64& rng, std::size_t n_sites,
                                  std::uint32_t dim_lo, std::uint32_t dim_hi);

std::vector<std::complex<double>> random_statevector(SplitMix64& rng, std::size_t dimension);

DiagonalObservable random_observable(SplitMix64& rng, std::size_t dimension, double lo,
                                     double hi);

struct TrialSummary {
    std::int64_t trials;
    std::int64_t failures;
    bool all_hold;
    double worst_slack; // smallest rhs - lhs seen
};

// Randomized property suites for the two inequalities. Trial t uses its own
// generator seeded with base_seed + t, so runs are reproducible and trials
// are independent of execution order.
TrialSummary run_markov_trials(std::uint64_t base_seed, std::int64_t trials, int max_qubits);
TrialSummary run_chebyshev_trials(std::uint64_t base_seed, std::int64_t trials,
                                  int max_qubits);

} // namespace mavnorm

#endif
