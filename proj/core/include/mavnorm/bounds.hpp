#ifndef MAVNORM_BOUNDS_HPP
#define MAVNORM_BOUNDS_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "mavnorm/product_state.hpp"
#include "mavnorm/statevector.hpp"

namespace mavnorm {

// Operator diagonal in the computational basis, stored as its eigenvalue
// table. Everything in the inequalities under test is of this form.
class DiagonalObservable {
public:
    explicit DiagonalObservable(std::vector<double> values);

    std::size_t dimension() const { return values_.size(); }
    double value(std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
};

struct BoundCheckResult {
    double lhs;   // projected norm^2
    double rhs;   // bound value
    bool holds;   // lhs <= rhs + 1e-12
    double slack; // rhs - lhs
};

// The raw value 2 exp(-2 eps^2 N). Deliberately unclamped: values above 1 are
// vacuous but faithful to the formula.
double hoeffding_bound(std::int64_t n_sites, double epsilon);

// Markov: mass of the basis states with f > a versus (1/a) <f>. Requires all
// eigenvalues >= 0 (NegativeEigenvalue), a > 0 (NonpositiveThreshold), state
// spaces of at most 2^20 amplitudes (TooLarge), and matching dimensions
// (DimensionMismatch).
BoundCheckResult markov_check(const std::vector<std::complex<double>>& amplitudes,
                              const DiagonalObservable& f, double a);
BoundCheckResult markov_check(const StateVector& psi, const DiagonalObservable& f, double a);
BoundCheckResult markov_check(const ProductState& state, const DiagonalObservable& f,
                              double a);

// Chebyshev: mass with |Y - <Y>| > eps versus Var(Y)/eps^2, implemented as
// the Markov reduction with f = (Y - <Y>)^2 and a = eps^2.
BoundCheckResult chebyshev_check(const std::vector<std::complex<double>>& amplitudes,
                                 const DiagonalObservable& y, double epsilon);
BoundCheckResult chebyshev_check(const StateVector& psi, const DiagonalObservable& y,
                                 double epsilon);
BoundCheckResult chebyshev_check(const ProductState& state, const DiagonalObservable& y,
                                 double epsilon);

struct ProductChebyshevBound {
    double sum_variance_bound; // (sum_i Var_i) / (N^2 eps^2)
    double uniform_bound;      // M / (N eps^2) with M = max_i Var_i
};

// Chebyshev chain for the entropy-rate observable on a product state. The sum
// bound never exceeds the uniform bound.
ProductChebyshevBound product_chebyshev_bound(const ProductState& state, double epsilon);

} // namespace mavnorm

#endif
