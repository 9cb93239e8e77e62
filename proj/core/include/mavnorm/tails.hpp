#ifndef MAVNORM_TAILS_HPP
#define MAVNORM_TAILS_HPP

#include <cstdint>
#include <vector>

#include "mavnorm/product_state.hpp"
#include "mavnorm/site_distribution.hpp"

namespace mavnorm {

// How a basis string is judged against the reference statistics. Frequency
// compares the empirical fraction of 1-outcomes with the Born expectation;
// EntropyRate compares the empirical bit rate -(1/N) log2 p with the entropy
// rate H. Either way, maverick means deviation strictly greater than epsilon.
enum class TailMode { Frequency, EntropyRate };

struct TailQuery {
    TailMode mode;
    double epsilon; // must be > 0
};

enum class WorldClass { Typical, Maverick };

// Certified enclosure of a maverick norm^2: lo <= exact <= hi, both in [0,1].
struct NormBracket {
    double lo;
    double hi;
};

// Exact maverick mass of the i.i.d. qubit chain with P(1) = p: the sum of
// C(N,n) p^n (1-p)^(N-n) over all n with |n/N - p| > epsilon. Term-by-term in
// log space with compensated summation; supports N up to 1e6.
double binomial_maverick_norm(double p, std::int64_t n_sites, double epsilon);

// Defining oracle for both modes: enumerates every basis string. Requires the
// total dimension to be at most 2^25 (TooLarge otherwise). Frequency mode
// requires all qubit sites (ModeUnsupported) and measures |mean outcome -
// mean of per-site P(1)|; EntropyRate mode measures the deviation of
// -(1/N) log2 p from the entropy rate. Zero-probability strings carry no norm
// and are skipped.
double bruteforce_maverick_norm(const ProductState& state, const TailQuery& query);

// Certified bracket on the EntropyRate maverick norm^2 for arbitrary product
// states, far beyond enumeration: convolves the per-site -log2 p distributions
// on a value grid of the given bin width, tracking a guaranteed [min, max]
// value interval per accumulated atom. lo counts only mass provably outside
// the typical band under worst-case placement inside the intervals; hi = 1 -
// (mass provably inside). N up to 1e6.
NormBracket dp_entropy_tail_bracket(const ProductState& state, double epsilon,
                                    double bin_width);

// Eq.-8 verdict for one supported basis string: Typical iff p(s) > 0 and
// |-(1/N) log2 p(s) - H| <= epsilon. Throws NotAWorld when p(s) = 0.
WorldClass classify_world(const ProductState& state, const BasisString& s, double epsilon);

// Deviation the classification thresholds on; exposed for reporting.
double world_deviation(const ProductState& state, const BasisString& s);

struct RepeatedMinimum {
    std::vector<std::int64_t> counts; // one entry per outcome of the site
    double value;                     // |sum_k n_k log2 p_k - N sum_k p_k log2 p_k|
};

// Enumerates all outcome-count vectors (n_0..n_{d-1}) summing to N for N
// repetitions of one site and minimizes |sum n_k log2 p_k - N sum p_k log2
// p_k|. Ties go to the lexicographically smallest count vector. Requires
// C(N+d-1, d-1) <= 1e6 compositions (TooLarge otherwise).
RepeatedMinimum repeated_state_minimum(const SiteDistribution& site, std::int64_t n_sites);

} // namespace mavnorm

#endif
