#pragma once
#include <cstdint>
#include <numbers>
#include <vector>

#include "ptrng/random.hpp"

namespace ptrng {

/// Largest mean accepted by the Poisson sampler; sequential search stays fast
/// below this and nothing physical needs more.
inline constexpr double kMaxSourceLambda = 100.0;

/// Pulsed attenuated-laser source: Poissonian photon number per pulse.
/// The default lambda puts the detected mean at exactly ln 2 for a detector
/// efficiency of 0.10 — the operating point that maximizes extraction.
struct SourceConfig {
    double lambda = 10.0 * std::numbers::ln2;  // mean photons per pulse
    double rep_rate_hz = 1.0e6;                // metadata for throughput reporting
};

/// Throws std::invalid_argument when a field is out of range.
void validate(const SourceConfig& config);

/// One Poisson(lambda) draw by inversion (sequential cumulative-pmf search).
/// lambda = 0 returns 0 without consuming randomness.
[[nodiscard]] std::uint32_t sample_photon_number(Xoshiro256StarStar& rng, double lambda);

/// Batch of mutually independent per-pulse photon numbers for a fresh stream.
[[nodiscard]] std::vector<std::uint32_t> generate_pulses(const SourceConfig& config,
                                                         std::uint64_t count,
                                                         RandomStream stream);

}  // namespace ptrng
