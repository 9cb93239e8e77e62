#ifndef MAVNORM_NUMERIC_HPP
#define MAVNORM_NUMERIC_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>

namespace mavnorm {

// Tolerances and size caps used across the library. Normalization is checked
// tightest at construction; round-trip checks get an order of magnitude more
// headroom because they accumulate up to ~1e6 summed terms.
inline constexpr double kSiteNormTol = 1e-12;
inline constexpr double kInputNormTol = 1e-10;
inline constexpr double kStateNormTol = 1e-9;
inline constexpr double kHoldsSlack = 1e-12;

inline constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 25;
inline constexpr std::uint64_t kObservableCap = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kCompositionCap = 1000000;
inline constexpr int kMaxCounterQubits = 25;
inline constexpr int kMaxSimulateQubits = 20;

constexpr double infinity() { return std::numeric_limits<double>::infinity(); }

// Kahan compensated accumulator. Tail sums run over up to ~1e6 terms close to
// the underflow edge, where naive summation visibly loses digits.
class KahanSum {
public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }

    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double clamp01(double x) {
    if (x < 0.0) return 0.0;
    if (x > 1.0) return 1.0;
    return x;
}

} // namespace mavnorm

#endif
