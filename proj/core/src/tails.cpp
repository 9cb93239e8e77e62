#include "mavnorm/tails.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "mavnorm/errors.hpp"
#include "mavnorm/numeric.hpp"

namespace mavnorm {

namespace {

double log_binomial_term(std::int64_t n_sites, std::int64_t n_ones, double log_p,
                         double log_q) {
    const double nd = static_cast<double>(n_sites);
    const double kd = static_cast<double>(n_ones);
    double t = std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
    if (n_ones > 0) t += kd * log_p;
    if (n_ones < n_sites) t += (nd - kd) * log_q;
    return t;
}

} // namespace

double binomial_maverick_norm(double p, std::int64_t n_sites, double epsilon) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw OutOfRange("probability must lie in [0, 1]");
    }
    if (n_sites < 1) {
        throw OutOfRange("need at least one site");
    }
    if (!(epsilon > 0.0)) {
        throw NonpositiveThreshold("epsilon must be positive");
    }
    // Degenerate chains put all mass on one string whose frequency equals p.
    if (p == 0.0 || p == 1.0) return 0.0;

    const double nd = static_cast<double>(n_sites);
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    const auto is_maverick = [&](std::int64_t n) {
        return std::abs(static_cast<double>(n) / nd - p) > epsilon;
    };

    // The typical counts form one contiguous block (n/N is monotone in n).
    std::int64_t first_typical = -1;
    for (std::int64_t n = 0; n <= n_sites; ++n) {
        if (!is_maverick(n)) {
            first_typical = n;
            break;
        }
    }
    if (first_typical < 0) return 1.0; // epsilon below the count grid spacing
    std::int64_t last_typical = first_typical;
    for (std::int64_t n = n_sites; n >= first_typical; --n) {
        if (!is_maverick(n)) {
            last_typical = n;
            break;
        }
    }

    KahanSum mass;
    // Both tails run toward the mean so terms are added smallest first.
    for (std::int64_t n = 0; n < first_typical; ++n) {
        mass.add(std::exp(log_binomial_term(n_sites, n, log_p, log_q)));
    }
    for (std::int64_t n = n_sites; n > last_typical; --n) {
        mass.add(std::exp(log_binomial_term(n_sites, n, log_p, log_q)));
    }
    return clamp01(mass.value());
}

double bruteforce_maverick_norm(const ProductState& state, const TailQuery& query) {
    if (!(query.epsilon > 0.0)) {
        throw NonpositiveThreshold("epsilon must be positive");
    }
    if (state.total_dimension_capped(kEnumerationCap) > kEnumerationCap) {
        throw TooLarge("state space exceeds the enumeration cap 2^25");
    }
    const std::size_t n = state.site_count();
    const double nd = static_cast<double>(n);

    // Per-site probability tables; zero-probability branches are pruned (they
    // carry no norm and are not worlds).
    std::vector<std::vector<double>> probs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& site = state.site(i);
        probs[i].resize(site.dimension());
        for (std::uint32_t k = 0; k < site.dimension(); ++k) {
            probs[i][k] = site.probability(k);
        }
    }

    KahanSum mass;
    if (query.mode == TailMode::Frequency) {
        double reference = 0.0;
        {
            KahanSum ref;
            for (std::size_t i = 0; i < n; ++i) {
                if (!state.site(i).is_qubit()) {
                    throw ModeUnsupported("frequency mode requires qubit sites");
                }
                ref.add(probs[i][1]);
            }
            reference = ref.value() / nd;
        }
        std::function<void(std::size_t, double, std::int64_t)> walk =
            [&](std::size_t i, double weight, std::int64_t ones) {
                if (i == n) {
                    const double xbar = static_cast<double>(ones) / nd;
                    if (std::abs(xbar - reference) > query.epsilon) mass.add(weight);
                    return;
                }
                if (probs[i][0] > 0.0) walk(i + 1, weight * probs[i][0], ones);
                if (probs[i][1] > 0.0) walk(i + 1, weight * probs[i][1], ones + 1);
            };
        walk(0, 1.0, 0);
    } else {
        const double h = entropy_rate(state);
        std::vector<std::vector<double>> logs(n);
        for (std::size_t i = 0; i < n; ++i) {
            logs[i].resize(probs[i].size(), 0.0);
            for (std::size_t k = 0; k < probs[i].size(); ++k) {
                if (probs[i][k] > 0.0) logs[i][k] = std::max(0.0, -std::log2(probs[i][k]));
            }
        }
        std::function<void(std::size_t, double, double)> walk =
            [&](std::size_t i, double weight, double log_sum) {
                if (i == n) {
                    if (std::abs(log_sum / nd - h) > query.epsilon) mass.add(weight);
                    return;
                }
                for (std::size_t k = 0; k < probs[i].size(); ++k) {
                    if (probs[i][k] > 0.0) {
                        walk(i + 1, weight * probs[i][k], log_sum + logs[i][k]);
                    }
                }
            };
        walk(0, 1.0, 0.0);
    }
    return clamp01(mass.value());
}

double world_deviation(const ProductState& state, const BasisString& s) {
    const double bits = log_probability(state, s);
    if (std::isinf(bits)) {
        throw NotAWorld("zero-probability strings are not worlds");
    }
    return std::abs(bits / static_cast<double>(state.site_count()) - entropy_rate(state));
}

WorldClass classify_world(const ProductState& state, const BasisString& s, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw NonpositiveThreshold("epsilon must be positive");
    }
    return world_deviation(state, s) > epsilon ? WorldClass::Maverick : WorldClass::Typical;
}

RepeatedMinimum repeated_state_minimum(const SiteDistribution& site, std::int64_t n_sites) {
    if (n_sites < 1) {
        throw OutOfRange("need at least one repetition");
    }
    const std::uint32_t d = site.dimension();
    // C(N+d-1, d-1) compositions; refuse anything beyond the enumeration cap.
    {
        unsigned __int128 comps = 1;
        for (std::uint32_t k = 1; k < d; ++k) {
            comps = comps * static_cast<unsigned __int128>(n_sites + k) / k;
            if (comps > static_cast<unsigned __int128>(kCompositionCap)) {
                throw TooLarge("too many outcome-count compositions to enumerate");
            }
        }
    }

    std::vector<double> expected(d), log_weight(d);
    for (std::uint32_t k = 0; k < d; ++k) {
        const double p = site.probability(k);
        expected[k] = static_cast<double>(n_sites) * p;
        log_weight[k] = p > 0.0 ? std::max(0.0, -std::log2(p)) : 0.0;
    }

    RepeatedMinimum best;
    best.value = infinity();
    std::vector<std::int64_t> counts(d, 0);
    // Lexicographic enumeration + strict improvement = lex-smallest tie-break.
    std::function<void(std::uint32_t, std::int64_t)> walk = [&](std::uint32_t k,
                                                                std::int64_t left) {
        if (k + 1 == d) {
            counts[k] = left;
            double sum = 0.0;
            bool feasible = true;
            for (std::uint32_t j = 0; j < d; ++j) {
                if (counts[j] > 0 && site.probability(j) == 0.0) {
                    feasible = false;
                    break;
                }
                sum += (static_cast<double>(counts[j]) - expected[j]) * log_weight[j];
            }
            if (feasible && std::abs(sum) < best.value) {
                best.value = std::abs(sum);
                best.counts = counts;
            }
            return;
        }
        for (std::int64_t c = 0; c <= left; ++c) {
            counts[k] = c;
            walk(k + 1, left - c);
        }
    };
    walk(0, n_sites);
    if (best.counts.empty()) {
        throw NotAWorld("site has no supported outcome"); // unreachable for valid sites
    }
    return best;
}

} // namespace mavnorm
