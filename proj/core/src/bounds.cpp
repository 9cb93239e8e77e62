#include "mavnorm/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "mavnorm/errors.hpp"
#include "mavnorm/numeric.hpp"
#include "mavnorm/site_distribution.hpp"

namespace mavnorm {

DiagonalObservable::DiagonalObservable(std::vector<double> values)
    : values_(std::move(values)) {
    if (values_.empty()) {
        throw DimensionMismatch("observable needs at least one eigenvalue");
    }
    if (values_.size() > kObservableCap) {
        throw TooLarge("observable table exceeds the 2^20 cap");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw OutOfRange("observable eigenvalues must be finite");
        }
    }
}

double hoeffding_bound(std::int64_t n_sites, double epsilon) {
    return 2.0 * std::exp(-2.0 * epsilon * epsilon * static_cast<double>(n_sites));
}

BoundCheckResult markov_check(const std::vector<std::complex<double>>& amplitudes,
                              const DiagonalObservable& f, double a) {
    if (amplitudes.size() > kObservableCap) {
        throw TooLarge("state space exceeds the 2^20 cap");
    }
    if (amplitudes.size() != f.dimension()) {
        throw DimensionMismatch("observable table does not match the state space");
    }
    if (!(a > 0.0)) {
        throw NonpositiveThreshold("threshold must be positive");
    }
    KahanSum projected;
    KahanSum expectation;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        const double fi = f.value(i);
        if (fi < 0.0) {
            throw NegativeEigenvalue("Markov requires a non-negative observable");
        }
        const double w = std::norm(amplitudes[i]);
        if (fi > a) projected.add(w);
        expectation.add(fi * w);
    }
    BoundCheckResult result;
    result.lhs = projected.value();
    result.rhs = expectation.value() / a;
    result.holds = result.lhs <= result.rhs + kHoldsSlack;
    result.slack = result.rhs - result.lhs;
    return result;
}

BoundCheckResult markov_check(const StateVector& psi, const DiagonalObservable& f, double a) {
    return markov_check(psi.amplitudes(), f, a);
}

BoundCheckResult markov_check(const ProductState& state, const DiagonalObservable& f,
                              double a) {
    return markov_check(enumerate_amplitudes(state, kObservableCap), f, a);
}

BoundCheckResult chebyshev_check(const std::vector<std::complex<double>>& amplitudes,
                                 const DiagonalObservable& y, double epsilon) {
    if (amplitudes.size() > kObservableCap) {
        throw TooLarge("state space exceeds the 2^20 cap");
    }
    if (amplitudes.size() != y.dimension()) {
        throw DimensionMismatch("observable table does not match the state space");
    }
    if (!(epsilon > 0.0)) {
        throw NonpositiveThreshold("epsilon must be positive");
    }
    KahanSum mean;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        mean.add(y.value(i) * std::norm(amplitudes[i]));
    }
    const double mu = mean.value();
    std::vector<double> centered(y.dimension());
    for (std::size_t i = 0; i < centered.size(); ++i) {
        const double d = y.value(i) - mu;
        centered[i] = d * d;
    }
    return markov_check(amplitudes, DiagonalObservable(std::move(centered)),
                        epsilon * epsilon);
}

BoundCheckResult chebyshev_check(const StateVector& psi, const DiagonalObservable& y,
                                 double epsilon) {
    return chebyshev_check(psi.amplitudes(), y, epsilon);
}

BoundCheckResult chebyshev_check(const ProductState& state, const DiagonalObservable& y,
                                 double epsilon) {
    return chebyshev_check(enumerate_amplitudes(state, kObservableCap), y, epsilon);
}

ProductChebyshevBound product_chebyshev_bound(const ProductState& state, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw NonpositiveThreshold("epsilon must be positive");
    }
    const double nd = static_cast<double>(state.site_count());
    KahanSum total;
    double max_var = 0.0;
    for (std::size_t i = 0; i < state.site_count(); ++i) {
        const double var = site_log_variance(state.site(i));
        total.add(var);
        max_var = std::max(max_var, var);
    }
    const double eps2 = epsilon * epsilon;
    ProductChebyshevBound bound;
    bound.uniform_bound = max_var / (nd * eps2);
    bound.sum_variance_bound = std::min(total.value() / (nd * nd * eps2), bound.uniform_bound);
    return bound;
}

} // namespace mavnorm
