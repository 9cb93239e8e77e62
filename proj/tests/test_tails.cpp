#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "mavnorm/bounds.hpp"
#include "mavnorm/errors.hpp"
#include "mavnorm/random_states.hpp"
#include "mavnorm/rng.hpp"
#include "mavnorm/tails.hpp"
#include "oracle_helpers.hpp"

using namespace mavnorm;
using cd = std::complex<double>;

namespace {

SiteDistribution exact_uniform_qubit() {
    return SiteDistribution({cd{0.5, 0.5}, cd{0.5, -0.5}});
}

ProductState iid(const SiteDistribution& site, std::size_t n) {
    return ProductState(std::vector<SiteDistribution>(n, site));
}

} // namespace

TEST_CASE("binomial_maverick_norm on pinned chains") {
    // p=1/2, N=2, eps=0.4: exactly the strings 00 and 11, mass 1/2.
    CHECK(binomial_maverick_norm(0.5, 2, 0.4) == doctest::Approx(0.5).epsilon(1e-13));

    // Exact-rational tail sums, frozen from an independent derivation.
    CHECK(binomial_maverick_norm(0.5, 100, 0.1) ==
          doctest::Approx(0.035200200217704815953).epsilon(1e-12));
    CHECK(binomial_maverick_norm(0.25, 12, 0.2) ==
          doctest::Approx(0.08607858419418335).epsilon(1e-12));
    CHECK(binomial_maverick_norm(0.3, 10, 0.05) ==
          doctest::Approx(0.733172068).epsilon(1e-12));

    // Degenerate chains concentrate all mass on one perfectly typical string.
    CHECK(binomial_maverick_norm(1.0, 10, 0.1) == 0.0);
    CHECK(binomial_maverick_norm(0.0, 10, 0.1) == 0.0);

    // eps wide enough to cover every count: no maverick mass at all.
    CHECK(binomial_maverick_norm(0.5, 8, 0.5) == 0.0);
    CHECK(binomial_maverick_norm(0.5, 8, 1.5) == 0.0);

    // eps below the count-grid spacing around an off-grid p: every string is
    // maverick and the tails must sum to exactly the whole norm.
    CHECK(binomial_maverick_norm(0.37, 10, 1e-9) == 1.0);

    CHECK_THROWS_AS(binomial_maverick_norm(-0.1, 10, 0.1), OutOfRange);
    CHECK_THROWS_AS(binomial_maverick_norm(1.1, 10, 0.1), OutOfRange);
    CHECK_THROWS_AS(binomial_maverick_norm(0.5, 0, 0.1), OutOfRange);
    CHECK_THROWS_AS(binomial_maverick_norm(0.5, 10, 0.0), NonpositiveThreshold);
    CHECK_THROWS_AS(binomial_maverick_norm(0.5, 10, -0.2), NonpositiveThreshold);
}

TEST_CASE("binomial_maverick_norm matches a Pascal-triangle oracle") {
    SplitMix64 rng(0x7A11u);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_index(0, 24));
        const double p = rng.next_uniform(0.02, 0.98);
        const double eps = rng.next_uniform(0.01, 0.6);
        const double lib = binomial_maverick_norm(p, n, eps);
        const double naive = oracle::binomial_tail_mass(p, n, eps);
        CHECK(lib == doctest::Approx(naive).epsilon(1e-11));
        CHECK(lib >= 0.0);
        CHECK(lib <= 1.0);
    }
}

TEST_CASE("binomial tails respect the 2 exp(-2 eps^2 N) envelope and decay") {
    for (const double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (const double eps : {0.05, 0.1}) {
            double prev = 1.0;
            for (const std::int64_t n : {100, 1000, 10000}) {
                const double value = binomial_maverick_norm(p, n, eps);
                CHECK(value <= hoeffding_bound(n, eps));
                CHECK(value <= prev); // monotone decay on this grid
                prev = value;
            }
        }
    }
    // The pinned decay point: far below 1e-6 well before N = 1e4.
    CHECK(binomial_maverick_norm(0.3, 10000, 0.05) < 1e-6);
}

TEST_CASE("bruteforce_maverick_norm in frequency mode") {
    SUBCASE("two 0.25-qubits, eps=0.3: only the 11 string deviates") {
        const ProductState state = iid(make_qubit_p(0.25), 2);
        const double mass =
            bruteforce_maverick_norm(state, {TailMode::Frequency, 0.3});
        CHECK(mass == doctest::Approx(0.0625).epsilon(1e-12));
    }
    SUBCASE("eps at least the maximum deviation leaves nothing") {
        const ProductState state = iid(make_qubit_p(0.25), 2);
        CHECK(bruteforce_maverick_norm(state, {TailMode::Frequency, 0.76}) == 0.0);
    }
    SUBCASE("iid qubits agree with the binomial closed form") {
        for (const double p : {0.25, 0.5, 0.62}) {
            const ProductState state = iid(make_qubit_p(p), 12);
            for (const double eps : {0.05, 0.2, 0.45}) {
                // The binomial path takes the target weight directly; the
                // enumeration recomputes it from amplitudes, so allow for the
                // make_qubit rounding of p itself.
                CHECK(bruteforce_maverick_norm(state, {TailMode::Frequency, eps}) ==
                      doctest::Approx(binomial_maverick_norm(p, 12, eps)).epsilon(1e-10));
            }
        }
    }
    SUBCASE("non-identical qubits use the mean of per-site weights") {
        // Sites with P(1) = 0.1 and 0.9: reference 0.5, xbar in {0, 1/2, 1}.
        const ProductState state({make_qubit_p(0.1), make_qubit_p(0.9)});
        // eps=0.4: only xbar in {0,1} deviate; mass = 0.1*0.9... enumerate:
        // (0,0): 0.9*0.1 = 0.09, (1,1): 0.1*0.9 = 0.09 -> 0.18.
        CHECK(bruteforce_maverick_norm(state, {TailMode::Frequency, 0.4}) ==
              doctest::Approx(0.18).epsilon(1e-12));
        const auto split = oracle::frequency_split(state, 0.4);
        CHECK(split.maverick == doctest::Approx(0.18).epsilon(1e-12));
    }
    SUBCASE("a non-qubit site is rejected") {
        const SiteDistribution trit({cd{0.5, 0.5}, cd{0.5, 0.0}, cd{0.5, 0.0}});
        const ProductState state({make_qubit_p(0.5), trit});
        CHECK_THROWS_AS(bruteforce_maverick_norm(state, {TailMode::Frequency, 0.1}),
                        ModeUnsupported);
        // ... but entropy-rate mode handles it fine.
        CHECK_NOTHROW(bruteforce_maverick_norm(state, {TailMode::EntropyRate, 0.1}));
    }
}

TEST_CASE("bruteforce_maverick_norm in entropy-rate mode") {
    SUBCASE("uniform chains have no deviation at all") {
        CHECK(bruteforce_maverick_norm(iid(exact_uniform_qubit(), 5),
                                       {TailMode::EntropyRate, 1e-9}) == 0.0);
    }
    SUBCASE("agreement with the direct-product oracle, random states") {
        SplitMix64 rng(0x0DDBA11u);
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t n = 1 + rng.next_index(0, 9);
            const ProductState state = random_product_state(rng, n, 2, 4);
            const double eps = rng.next_uniform(0.02, 0.5);
            const auto split = oracle::entropy_split(state, eps);
            const double lib =
                bruteforce_maverick_norm(state, {TailMode::EntropyRate, eps});
            CHECK(lib == doctest::Approx(split.maverick).epsilon(1e-9));
            // Maverick and typical masses partition the whole norm.
            CHECK(lib + split.typical == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("frequency deviations imply entropy-rate deviations on iid qubits") {
        // For identical qubits the rate is affine in xbar with slope
        // log2((1-p)/p), so a frequency deviation beyond eps forces a rate
        // deviation beyond eps * |slope|.
        const double p = 0.3;
        const double slope = 1.222392421336448; // log2(7/3), frozen
        const ProductState state = iid(make_qubit_p(p), 14);
        for (const double eps : {0.1, 0.2}) {
            const double freq =
                bruteforce_maverick_norm(state, {TailMode::Frequency, eps});
            const double entropy = bruteforce_maverick_norm(
                state, {TailMode::EntropyRate, eps * slope * (1.0 - 1e-9)});
            CHECK(freq <= entropy + 1e-12);
        }
    }
    SUBCASE("size guard") {
        CHECK_THROWS_AS(bruteforce_maverick_norm(iid(exact_uniform_qubit(), 26),
                                                 {TailMode::EntropyRate, 0.1}),
                        TooLarge);
        CHECK_THROWS_AS(bruteforce_maverick_norm(iid(exact_uniform_qubit(), 4),
                                                 {TailMode::EntropyRate, 0.0}),
                        NonpositiveThreshold);
    }
}

TEST_CASE("classify_world and world_deviation") {
    const ProductState quarter = iid(make_qubit_p(0.25), 4);

    SUBCASE("uniform strings are typical at any threshold") {
        const ProductState u = iid(exact_uniform_qubit(), 4);
        CHECK(classify_world(u, {0, 1, 1, 0}, 0.01) == WorldClass::Typical);
        CHECK(world_deviation(u, {0, 1, 1, 0}) == 0.0);
    }
    SUBCASE("the all-ones string on 0.25-qubits is strongly maverick") {
        CHECK(world_deviation(quarter, {1, 1, 1, 1}) ==
              doctest::Approx(1.1887218755408671361).epsilon(1e-13));
        CHECK(classify_world(quarter, {1, 1, 1, 1}, 0.5) == WorldClass::Maverick);
        CHECK(classify_world(quarter, {1, 1, 1, 1}, 1.2) == WorldClass::Typical);
    }
    SUBCASE("one 1 in four sites hits the entropy rate exactly") {
        // 3 * 0.415037... + 2.0 = 4H, so the deviation vanishes to rounding.
        CHECK(world_deviation(quarter, {1, 0, 0, 0}) < 1e-12);
        CHECK(classify_world(quarter, {1, 0, 0, 0}, 1e-9) == WorldClass::Typical);
    }
    SUBCASE("zero-probability strings are not worlds") {
        const ProductState det({make_qubit(cd{1.0, 0.0}, cd{0.0, 0.0}), make_qubit_p(0.5)});
        CHECK_THROWS_AS(classify_world(det, {0, 1}, 0.1), NotAWorld);
        CHECK_THROWS_AS(world_deviation(det, {0, 0}), NotAWorld);
        CHECK_THROWS_AS(classify_world(det, {1, 1}, 0.0), NonpositiveThreshold);
    }
}

TEST_CASE("repeated_state_minimum") {
    SUBCASE("0.25/0.75 qubit, N=4: expected counts are integral") {
        const auto r = repeated_state_minimum(make_qubit_p(0.25), 4);
        REQUIRE(r.counts.size() == 2);
        CHECK(r.counts[0] == 3); // outcome 0 carries weight 0.75
        CHECK(r.counts[1] == 1);
        // Exactly zero in real arithmetic; the make_qubit rescale leaves a
        // ~1e-15 floating-point residue.
        CHECK(r.value < 1e-12);
    }
    SUBCASE("0.3 qubit, N=10: argmin at (7, 3)") {
        const auto r = repeated_state_minimum(make_qubit_p(0.3), 10);
        CHECK(r.counts == std::vector<std::int64_t>{7, 3});
        CHECK(r.value < 1e-12);
    }
    SUBCASE("uniform qubit: every vector ties at zero, lex-first wins") {
        const auto r = repeated_state_minimum(exact_uniform_qubit(), 6);
        CHECK(r.counts == std::vector<std::int64_t>{0, 6});
        CHECK(r.value == 0.0);
    }
    SUBCASE("dyadic d=4 site: zero minimum with the lex tie-break") {
        // Weights {1/8, 1/8, 1/4, 1/2} have integer log-weights {3,3,2,1};
        // several count vectors reach zero and (0,0,6,2) is the lex-smallest.
        const SiteDistribution site({cd{0.25, 0.25}, cd{0.25, -0.25}, cd{0.5, 0.0},
                                     cd{0.5, 0.5}});
        REQUIRE(site.probability(0) == 0.125);
        REQUIRE(site.probability(3) == 0.5);
        const auto r = repeated_state_minimum(site, 8);
        CHECK(r.value == 0.0);
        CHECK(r.counts == std::vector<std::int64_t>{0, 0, 6, 2});
    }
    SUBCASE("random qubits stay within one count of N * p per outcome") {
        SplitMix64 rng(0x715Eu);
        for (int trial = 0; trial < 20; ++trial) {
            const SiteDistribution site = random_site(rng, 2);
            const std::int64_t n = 1 + static_cast<std::int64_t>(rng.next_index(0, 29));
            const auto r = repeated_state_minimum(site, n);
            std::int64_t total = 0;
            for (std::size_t k = 0; k < 2; ++k) {
                total += r.counts[k];
                CHECK(std::abs(static_cast<double>(r.counts[k]) -
                               static_cast<double>(n) * site.probability(k)) <= 1.0 + 1e-9);
            }
            CHECK(total == n);
        }
    }
    SUBCASE("composition budget") {
        const SiteDistribution hex({cd{std::sqrt(1.0 / 6), 0.0}, cd{std::sqrt(1.0 / 6), 0.0},
                                    cd{std::sqrt(1.0 / 6), 0.0}, cd{std::sqrt(1.0 / 6), 0.0},
                                    cd{std::sqrt(1.0 / 6), 0.0},
                                    cd{std::sqrt(1.0 / 6), 0.0}});
        CHECK_THROWS_AS(repeated_state_minimum(hex, 100), TooLarge); // C(105,5) > 1e6
        CHECK_THROWS_AS(repeated_state_minimum(hex, 0), OutOfRange);
        CHECK_NOTHROW(repeated_state_minimum(hex, 20)); // C(25,5) = 53130
    }
}
