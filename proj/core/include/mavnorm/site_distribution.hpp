#ifndef MAVNORM_SITE_DISTRIBUTION_HPP
#define MAVNORM_SITE_DISTRIBUTION_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace mavnorm {

// Outcome amplitudes c(0..d-1) of one subsystem. Construction enforces unit
// norm (sum of |c(k)|^2 within 1e-12 of 1) and finiteness; a qubit is the
// d = 2 special case.
class SiteDistribution {
public:
    explicit SiteDistribution(std::vector<std::complex<double>> amplitudes);

    std::size_t dimension() const { return amplitudes_.size(); }
    const std::complex<double>& amplitude(std::size_t k) const { return amplitudes_[k]; }
    const std::vector<std::complex<double>>& amplitudes() const { return amplitudes_; }

    // Born weight |c(k)|^2.
    double probability(std::size_t k) const { return std::norm(amplitudes_[k]); }

    bool is_qubit() const { return amplitudes_.size() == 2; }

    // Shannon entropy of the outcome weights in bits, with 0 log 0 = 0.
    double entropy_bits() const;

    bool operator==(const SiteDistribution&) const = default;

private:
    std::vector<std::complex<double>> amplitudes_;
};

// Qubit with amplitude `alpha` on outcome 1 and `beta` on outcome 0, i.e. the
// preparation alpha|1> + beta|0>. Outcome 1 is the counted ("down") outcome.
// Requires |alpha|^2 + |beta|^2 = 1 within 1e-10; the stored amplitudes are
// rescaled so the construction invariant holds exactly.
SiteDistribution make_qubit(std::complex<double> alpha, std::complex<double> beta);

// Qubit specified by the Born weight of outcome 1, with real nonnegative
// amplitudes: sqrt(p)|1> + sqrt(1-p)|0>.
SiteDistribution make_qubit_p(double p_one);

// Variance, in bits^2, of -log2 |c(k)|^2 under the site's own weights.
// Zero-weight outcomes are excluded from the support, so the result is finite.
double site_log_variance(const SiteDistribution& site);

} // namespace mavnorm

#endif
