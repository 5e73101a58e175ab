#include "ptrng/source.hpp"

#include <cmath>
#include <stdexcept>

namespace ptrng {

void validate(const SourceConfig& config) {
    if (!(config.lambda >= 0.0) || config.lambda > kMaxSourceLambda)
        throw std::invalid_argument("SourceConfig: lambda must lie in [0, 100]");
    if (!(config.rep_rate_hz > 0.0) || !std::isfinite(config.rep_rate_hz))
        throw std::invalid_argument("SourceConfig: rep_rate_hz must be positive");
}

std::uint32_t sample_photon_number(Xoshiro256StarStar& rng, double lambda) {
    if (!(lambda >= 0.0) || lambda > kMaxSourceLambda)
        throw std::domain_error("sample_photon_number: lambda must lie in [0, 100]");
    if (lambda == 0.0) return 0;

    const double u = rng.next_double();
    double pmf = std::exp(-lambda);
    double cdf = pmf;
    std::uint32_t n = 0;
    // Inversion by sequential search. The cap is unreachable for lambda <= 100
    // (the tail above n = 4096 is vanishingly small); it only bounds the walk
    // against accumulated rounding in cdf when u is within an ulp of 1.
    while (u > cdf && n < 4096) {
        ++n;
        pmf *= lambda / static_cast<double>(n);
        cdf += pmf;
    }
    return n;
}

std::vector<std::uint32_t> generate_pulses(const SourceConfig& config, std::uint64_t count,
                                           RandomStream stream) {
    validate(config);
    if (count == 0) throw std::domain_error("pulse count must be positive");
    Xoshiro256StarStar rng{stream};
    std::vector<std::uint32_t> pulses;
    pulses.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
        pulses.push_back(sample_photon_number(rng, config.lambda));
    return pulses;
}

}  // namespace ptrng
