#include "mavnorm/site_distribution.hpp"

#include <cmath>
#include <string>

#include "mavnorm/errors.hpp"
#include "mavnorm/numeric.hpp"

namespace mavnorm {

SiteDistribution::SiteDistribution(std::vector<std::complex<double>> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) {
        throw DimensionMismatch("site distribution needs at least one outcome");
    }
    KahanSum total;
    for (const auto& c : amplitudes_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw NotNormalized("site amplitude is not finite");
        }
        total.add(std::norm(c));
    }
    if (std::abs(total.value() - 1.0) > kSiteNormTol) {
        throw NotNormalized("site weights sum to " + std::to_string(total.value()) +
                            ", expected 1 within 1e-12");
    }
}

double SiteDistribution::entropy_bits() const {
    KahanSum h;
    for (std::size_t k = 0; k < amplitudes_.size(); ++k) {
        const double p = probability(k);
        if (p > 0.0) {
            h.add(-p * std::log2(p));
        }
    }
    // Guard against -0.0 and tiny negative rounding for near-deterministic sites.
    return h.value() < 0.0 ? 0.0 : h.value();
}

SiteDistribution make_qubit(std::complex<double> alpha, std::complex<double> beta) {
    const double total = std::norm(alpha) + std::norm(beta);
    if (!std::isfinite(total) || std::abs(total - 1.0) > kInputNormTol) {
        throw NotNormalized("|alpha|^2 + |beta|^2 = " + std::to_string(total) +
                            ", expected 1 within 1e-10");
    }
    const double scale = 1.0 / std::sqrt(total);
    // Outcome |1> carries alpha, outcome |0> carries beta.
    return SiteDistribution({beta * scale, alpha * scale});
}

SiteDistribution make_qubit_p(double p_one) {
    if (!(p_one >= 0.0) || !(p_one <= 1.0)) {
        throw OutOfRange("qubit weight must lie in [0, 1]");
    }
    return make_qubit(std::sqrt(p_one), std::sqrt(1.0 - p_one));
}

double site_log_variance(const SiteDistribution& site) {
    KahanSum mean;
    for (std::size_t k = 0; k < site.dimension(); ++k) {
        const double p = site.probability(k);
        if (p > 0.0) {
            mean.add(-p * std::log2(p));
        }
    }
    const double mu = mean.value();
    KahanSum var;
    for (std::size_t k = 0; k < site.dimension(); ++k) {
        const double p = site.probability(k);
        if (p > 0.0) {
            const double d = -std::log2(p) - mu;
            var.add(p * d * d);
        }
    }
    return var.value() < 0.0 ? 0.0 : var.value();
}

} // namespace mavnorm
