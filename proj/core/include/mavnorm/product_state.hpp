#ifndef MAVNORM_PRODUCT_STATE_HPP
#define MAVNORM_PRODUCT_STATE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mavnorm/site_distribution.hpp"

namespace mavnorm {

// One measurement record x_1 ... x_N, with 0 <= x_i < d_i.
using BasisString = std::vector<std::uint32_t>;

// Per-site support of the random variable v = -log2 |c(k)|^2: (value, weight)
// pairs with weight = |c(k)|^2 > 0. Zero-weight outcomes are omitted, so every
// retained value is finite and >= 0.
struct LogWeight {
    double value;
    double weight;
};
using LogWeightSummary = std::vector<std::vector<LogWeight>>;

// Ordered product of independent site distributions |phi_1>...|phi_N>.
class ProductState {
public:
    explicit ProductState(std::vector<SiteDistribution> sites);

    std::size_t site_count() const { return sites_.size(); }
    const SiteDistribution& site(std::size_t i) const { return sites_[i]; }
    const std::vector<SiteDistribution>& sites() const { return sites_; }

    // True when all sites are qubits.
    bool all_qubits() const;

    // Product of site dimensions, saturating at `cap` (returns cap + 1 when
    // the true product exceeds it). Enumeration callers check against their
    // own caps; the type itself does not restrict total dimension.
    std::uint64_t total_dimension_capped(std::uint64_t cap) const;

private:
    std::vector<SiteDistribution> sites_;
};

// -log2 of the Born weight of `s`, in bits: the sum over sites of
// -log2 |c_i(x_i)|^2, computed by summing per-site logs (never by first
// multiplying the probabilities, which underflows long before N = 1e6).
// Returns +infinity exactly when some site gives x_i zero amplitude.
double log_probability(const ProductState& state, const BasisString& s);

// Shannon entropy rate H in bits per site: the mean of per-site entropies,
// which for a product state equals E[-log2 p] / N.
double entropy_rate(const ProductState& state);

// Per-site (value, weight) support tables for v = -log2 |c(k)|^2.
LogWeightSummary log_weight_summary(const ProductState& state);

// Dense amplitude table over the composite basis, site 1 fastest-varying
// (mixed-radix little-endian). Throws TooLarge beyond `cap` basis states.
std::vector<std::complex<double>> enumerate_amplitudes(const ProductState& state,
                                                       std::uint64_t cap);

} // namespace mavnorm

#endif
