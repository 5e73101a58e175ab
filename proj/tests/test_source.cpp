#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ptrng/random.hpp"
#include "ptrng/randtest.hpp"
#include "ptrng/source.hpp"
#include "ptrng/special_functions.hpp"
#include "ptrng/theory.hpp"

using ptrng::RandomStream;
using ptrng::SourceConfig;
using ptrng::Xoshiro256StarStar;

TEST_SUITE("source") {

    TEST_CASE("zero intensity always yields zero photons without consuming randomness") {
        Xoshiro256StarStar rng{RandomStream{3, 0}};
        Xoshiro256StarStar untouched{RandomStream{3, 0}};
        for (int i = 0; i < 100; ++i) CHECK(ptrng::sample_photon_number(rng, 0.0) == 0);
        CHECK(rng.next_u64() == untouched.next_u64());
    }

    TEST_CASE("sampler rejects out-of-range intensities") {
        Xoshiro256StarStar rng{RandomStream{3, 0}};
        CHECK_THROWS_AS(ptrng::sample_photon_number(rng, -0.5), std::domain_error);
        CHECK_THROWS_AS(ptrng::sample_photon_number(rng, 100.5), std::domain_error);
        CHECK_NOTHROW(ptrng::sample_photon_number(rng, 100.0));
    }

    TEST_CASE("sample mean and vacuum frequency at the operating point") {
        constexpr double kLambda = 0.693;
        constexpr int kDraws = 1'000'000;
        Xoshiro256StarStar rng{RandomStream{101, 0}};
        std::uint64_t total = 0;
        int vacuum = 0;
        for (int i = 0; i < kDraws; ++i) {
            const unsigned n = ptrng::sample_photon_number(rng, kLambda);
            total += n;
            vacuum += n == 0 ? 1 : 0;
        }
        // Poisson mean = variance, 4-sigma band on the sample mean.
        CHECK(std::abs(double(total) / kDraws - kLambda) < 4.0 * std::sqrt(kLambda / kDraws));
        // P(n=0) = e^(-0.693) ~ 0.5, 4-sigma binomial band.
        CHECK(std::abs(double(vacuum) / kDraws - std::exp(-kLambda)) <
              4.0 * std::sqrt(0.25 / kDraws));
    }

    TEST_CASE("pulse batches honour the trivial and determinism contracts") {
        SourceConfig config;
        config.lambda = 0.0;
        CHECK(ptrng::generate_pulses(config, 5, RandomStream{1, 0}) ==
              std::vector<std::uint32_t>{0, 0, 0, 0, 0});

        config.lambda = 0.693;
        const auto first = ptrng::generate_pulses(config, 1000, RandomStream{9, 4});
        const auto second = ptrng::generate_pulses(config, 1000, RandomStream{9, 4});
        CHECK(first == second);
        CHECK(first != ptrng::generate_pulses(config, 1000, RandomStream{9, 5}));
    }

    TEST_CASE("pulse batches reject invalid configurations") {
        SourceConfig config;
        config.lambda = 101.0;
        CHECK_THROWS_AS(ptrng::generate_pulses(config, 10, RandomStream{1, 0}),
                        std::invalid_argument);
        config.lambda = 1.0;
        config.rep_rate_hz = 0.0;
        CHECK_THROWS_AS(ptrng::generate_pulses(config, 10, RandomStream{1, 0}),
                        std::invalid_argument);
        config.rep_rate_hz = 1e6;
        CHECK_THROWS_AS(ptrng::generate_pulses(config, 0, RandomStream{1, 0}), std::domain_error);
    }

    TEST_CASE("empirical histogram matches the analytic pmf") {
        SourceConfig config;
        config.lambda = 0.693;
        constexpr int kDraws = 1'000'000;
        const auto draws = ptrng::generate_pulses(config, kDraws, RandomStream{202, 0});

        // Chi-square goodness of fit over bins n = 0..6 with the tail pooled.
        constexpr int kBins = 7;
        std::vector<std::uint64_t> observed(kBins + 1, 0);
        for (unsigned n : draws) observed[n < kBins ? n : kBins] += 1;
        double stat = 0.0;
        double tail_probability = 1.0;
        for (int n = 0; n < kBins; ++n) {
            const double expected = kDraws * ptrng::theory::poisson_pmf(config.lambda, n);
            tail_probability -= ptrng::theory::poisson_pmf(config.lambda, n);
            stat += (observed[n] - expected) * (observed[n] - expected) / expected;
        }
        const double expected_tail = kDraws * tail_probability;
        stat += (observed[kBins] - expected_tail) * (observed[kBins] - expected_tail) /
                expected_tail;
        // 8 cells, 7 degrees of freedom.
        CHECK(ptrng::gamma_q(3.5, stat / 2.0) > 0.001);
    }

    TEST_CASE("lag-1 autocorrelation of the click indicator is null") {
        SourceConfig config;
        config.lambda = 0.693;
        constexpr int kDraws = 1'000'000;
        const auto draws = ptrng::generate_pulses(config, kDraws, RandomStream{303, 0});
        std::vector<bool> indicator(draws.size());
        for (std::size_t i = 0; i < draws.size(); ++i) indicator[i] = draws[i] > 0;
        CHECK(std::abs(ptrng::lag1_autocorrelation(indicator)) < 4.0 / std::sqrt(double(kDraws)));
    }

    TEST_CASE("Bernoulli thinning reproduces the attenuated Poisson statistics") {
        // Thinning each photon of Poisson(6.93) with keep-probability 0.1 must
        // look exactly like Poisson(0.693); direct sampling is the oracle.
        constexpr int kDraws = 1'000'000;
        constexpr double kEta = 0.1;
        Xoshiro256StarStar rng{RandomStream{404, 0}};
        int thinned_vacuum = 0;
        for (int i = 0; i < kDraws; ++i) {
            const unsigned n = ptrng::sample_photon_number(rng, 6.93);
            unsigned kept = 0;
            for (unsigned j = 0; j < n; ++j) kept += rng.bernoulli(kEta) ? 1 : 0;
            thinned_vacuum += kept == 0 ? 1 : 0;
        }
        Xoshiro256StarStar oracle_rng{RandomStream{404, 1}};
        int direct_vacuum = 0;
        for (int i = 0; i < kDraws; ++i)
            direct_vacuum += ptrng::sample_photon_number(oracle_rng, 0.693) == 0 ? 1 : 0;

        const double p_thin = double(thinned_vacuum) / kDraws;
        const double p_direct = double(direct_vacuum) / kDraws;
        const double expected = std::exp(-0.693);
        CHECK(std::abs(p_thin - expected) < 4.0 * std::sqrt(0.25 / kDraws));
        // Two-sample 4-sigma comparison against the direct-sampling oracle.
        CHECK(std::abs(p_thin - p_direct) < 4.0 * std::sqrt(2.0 * 0.25 / kDraws));
    }
}
