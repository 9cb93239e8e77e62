#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <vector>

#include "mavnorm/errors.hpp"
#include "mavnorm/numeric.hpp"
#include "mavnorm/tails.hpp"

namespace mavnorm {

namespace {

// One lump of probability mass whose -log2 p sum is certified to lie in
// [v_lo, v_hi]. The integer keys are the binned coordinates used for merging;
// certification never relies on them, only on the value interval.
struct Atom {
    std::int64_t key_lo;
    std::int64_t key_hi;
    double v_lo;
    double v_hi;
    double mass;
};

using AtomList = std::vector<Atom>;

constexpr double kPruneTol = 1e-60;       // dropped mass is charged to `hi` only
constexpr std::size_t kAtomCap = std::size_t{1} << 19;
constexpr std::int64_t kCompositionBudget = 2000000;

// A site's -log2 p support collapsed onto the bin grid: per bin, the exact
// min/max of the values that landed there plus their total weight.
struct BinnedEntry {
    std::int64_t bin;
    double v_min;
    double v_max;
    double weight;
};

bool sort_key_less(const Atom& a, const Atom& b) {
    return a.key_lo != b.key_lo ? a.key_lo < b.key_lo : a.key_hi < b.key_hi;
}

// Sort by key, merge equal keys (mass adds, value intervals union), drop
// near-zero atoms. Pruned mass is never certified either way, so it lands in
// the ambiguous middle of the bracket automatically.
void normalize(AtomList& atoms) {
    std::sort(atoms.begin(), atoms.end(), sort_key_less);
    AtomList merged;
    merged.reserve(atoms.size());
    for (const Atom& a : atoms) {
        if (!merged.empty() && merged.back().key_lo == a.key_lo &&
            merged.back().key_hi == a.key_hi) {
            Atom& m = merged.back();
            m.v_lo = std::min(m.v_lo, a.v_lo);
            m.v_hi = std::max(m.v_hi, a.v_hi);
            m.mass += a.mass;
        } else {
            merged.push_back(a);
        }
    }
    atoms.clear();
    for (const Atom& a : merged) {
        if (a.mass >= kPruneTol) atoms.push_back(a);
    }
    // Emergency coarsening: halve the key resolution until under the cap.
    // Only atoms sharing a doubled bin merge, so sparse supports keep their
    // gaps and intervals grow no faster than the effective bin width. The
    // keys are merge heuristics only; certification rides on the intervals.
    while (atoms.size() > kAtomCap) {
        for (Atom& a : atoms) {
            a.key_lo >>= 1;
            a.key_hi >>= 1;
        }
        std::sort(atoms.begin(), atoms.end(), sort_key_less);
        AtomList half;
        half.reserve(atoms.size() / 2 + 1);
        for (const Atom& a : atoms) {
            if (!half.empty() && half.back().key_lo == a.key_lo &&
                half.back().key_hi == a.key_hi) {
                Atom& m = half.back();
                m.v_lo = std::min(m.v_lo, a.v_lo);
                m.v_hi = std::max(m.v_hi, a.v_hi);
                m.mass += a.mass;
            } else {
                half.push_back(a);
            }
        }
        atoms.swap(half);
    }
}

AtomList convolve(const AtomList& acc, const AtomList& factor) {
    AtomList out;
    out.reserve(acc.size() * factor.size());
    for (const Atom& a : acc) {
        for (const Atom& b : factor) {
            out.push_back({a.key_lo + b.key_lo, a.key_hi + b.key_hi, a.v_lo + b.v_lo,
                           a.v_hi + b.v_hi, a.mass * b.mass});
        }
    }
    normalize(out);
    return out;
}

// Distribution of one site as single-bin atoms.
AtomList site_factor(const std::vector<BinnedEntry>& support) {
    AtomList atoms;
    atoms.reserve(support.size());
    for (const BinnedEntry& e : support) {
        atoms.push_back({e.bin, e.bin, e.v_min, e.v_max, e.weight});
    }
    return atoms;
}

// Exact multiset distribution of n_copies identical sites, enumerated over
// outcome-count compositions with multinomial weights in log space.
AtomList multinomial_factor(const std::vector<BinnedEntry>& support,
                            std::int64_t n_copies) {
    const std::size_t s = support.size();
    std::vector<double> log_w(s);
    for (std::size_t k = 0; k < s; ++k) log_w[k] = std::log(support[k].weight);
    const double log_total = std::lgamma(static_cast<double>(n_copies) + 1.0);

    AtomList atoms;
    std::vector<std::int64_t> counts(s, 0);
    std::function<void(std::size_t, std::int64_t)> walk = [&](std::size_t k,
                                                              std::int64_t left) {
        if (k + 1 == s) {
            counts[k] = left;
            std::int64_t key = 0;
            double v_lo = 0.0, v_hi = 0.0, log_mass = log_total;
            for (std::size_t j = 0; j < s; ++j) {
                const double cj = static_cast<double>(counts[j]);
                key += counts[j] * support[j].bin;
                v_lo += cj * support[j].v_min;
                v_hi += cj * support[j].v_max;
                log_mass += cj * log_w[j] - std::lgamma(cj + 1.0);
            }
            atoms.push_back({key, key, v_lo, v_hi, std::exp(log_mass)});
            return;
        }
        for (std::int64_t c = 0; c <= left; ++c) {
            counts[k] = c;
            walk(k + 1, left - c);
        }
    };
    walk(0, n_copies);
    normalize(atoms);
    return atoms;
}

std::int64_t composition_count(std::int64_t n, std::size_t parts) {
    unsigned __int128 comps = 1;
    for (std::size_t k = 1; k < parts; ++k) {
        comps = comps * static_cast<unsigned __int128>(n + static_cast<std::int64_t>(k)) /
                static_cast<unsigned __int128>(k);
        if (comps > static_cast<unsigned __int128>(kCompositionBudget)) {
            return kCompositionBudget + 1;
        }
    }
    return static_cast<std::int64_t>(comps);
}

} // namespace

NormBracket dp_entropy_tail_bracket(const ProductState& state, double epsilon,
                                    double bin_width) {
    if (!(epsilon > 0.0)) {
        throw NonpositiveThreshold("epsilon must be positive");
    }
    if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
        throw OutOfRange("bin width must be positive and finite");
    }

    const std::size_t n = state.site_count();
    const double nd = static_cast<double>(n);
    const LogWeightSummary summary = log_weight_summary(state);

    // Bin each site's support; keep exact per-bin value ranges.
    const double max_bin = static_cast<double>(std::numeric_limits<std::int64_t>::max()) /
                           (4.0 * (nd + 1.0));
    std::vector<std::vector<BinnedEntry>> binned(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::map<std::int64_t, BinnedEntry> bins;
        for (const LogWeight& lw : summary[i]) {
            const double scaled = lw.value / bin_width;
            if (!(std::abs(scaled) < max_bin)) {
                throw TooLarge("bin width too small for this state's log-weights");
            }
            const auto j = static_cast<std::int64_t>(std::floor(scaled));
            auto [it, fresh] = bins.try_emplace(j, BinnedEntry{j, lw.value, lw.value, 0.0});
            it->second.v_min = std::min(it->second.v_min, lw.value);
            it->second.v_max = std::max(it->second.v_max, lw.value);
            it->second.weight += lw.weight;
        }
        binned[i].reserve(bins.size());
        for (const auto& [j, e] : bins) binned[i].push_back(e);
    }

    // Group identical sites so i.i.d. chains collapse to one multinomial
    // factor instead of N convolutions.
    std::map<std::vector<std::uint64_t>, std::pair<std::size_t, std::int64_t>> groups;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::uint64_t> key;
        key.reserve(binned[i].size() * 4);
        for (const BinnedEntry& e : binned[i]) {
            key.push_back(static_cast<std::uint64_t>(e.bin));
            key.push_back(std::bit_cast<std::uint64_t>(e.v_min));
            key.push_back(std::bit_cast<std::uint64_t>(e.v_max));
            key.push_back(std::bit_cast<std::uint64_t>(e.weight));
        }
        auto [it, fresh] = groups.try_emplace(std::move(key), std::make_pair(i, 0));
        it->second.second += 1;
    }

    std::vector<AtomList> factors;
    for (const auto& [key, rep_and_count] : groups) {
        const auto& support = binned[rep_and_count.first];
        const std::int64_t copies = rep_and_count.second;
        if (support.size() == 1) {
            // Deterministic shift: one atom for the whole group.
            const BinnedEntry& e = support[0];
            const double cd = static_cast<double>(copies);
            factors.push_back({{copies * e.bin, copies * e.bin, cd * e.v_min, cd * e.v_max,
                                std::pow(e.weight, cd)}});
        } else if (copies == 1) {
            factors.push_back(site_factor(support));
        } else if (composition_count(copies, support.size()) <= kCompositionBudget) {
            factors.push_back(multinomial_factor(support, copies));
        } else {
            // No closed lattice fits the budget: fall back to per-site folds.
            for (std::int64_t c = 0; c < copies; ++c) {
                factors.push_back(site_factor(support));
            }
        }
    }
    std::sort(factors.begin(), factors.end(),
              [](const AtomList& a, const AtomList& b) { return a.size() < b.size(); });

    AtomList acc{{0, 0, 0.0, 0.0, 1.0}};
    for (const AtomList& f : factors) {
        acc = convolve(acc, f);
    }

    // Typical band in total-bits units, and a worst-case rounding margin for
    // the interval sums and the band endpoints themselves.
    const double h = entropy_rate(state);
    const double band_lo = nd * (h - epsilon);
    const double band_hi = nd * (h + epsilon);
    KahanSum certain_maverick;
    KahanSum certain_typical;
    for (const Atom& a : acc) {
        const double margin =
            1e-9 + (nd + 8.0) * 0x1.0p-52 *
                       (std::abs(a.v_hi) + std::abs(a.v_lo) + std::abs(band_hi) + 1.0);
        if (a.v_hi + margin < band_lo || a.v_lo - margin > band_hi) {
            certain_maverick.add(a.mass);
        } else if (a.v_lo - margin >= band_lo && a.v_hi + margin <= band_hi) {
            certain_typical.add(a.mass);
        }
        // anything else (including all pruned mass) stays ambiguous
    }

    NormBracket bracket;
    bracket.lo = clamp01(certain_maverick.value());
    bracket.hi = clamp01(1.0 - certain_typical.value());
    bracket.hi = std::max(bracket.hi, bracket.lo);
    return bracket;
}

} // namespace mavnorm
