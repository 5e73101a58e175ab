#pragma once
#include <cstdint>
#include <vector>

namespace ptrng::theory {

/// One point of the efficiency curve: mu is the detected mean photon number
/// per gate, efficiency the expected random bits per applied gate.
struct EfficiencyPoint {
    double mu;
    double efficiency;
};

/// Poisson probability mass (mu^n e^-mu) / n!, evaluated in log space so
/// large mu and n stay representable.
[[nodiscard]] double poisson_pmf(double mu, std::uint64_t n);

/// Probability that an ordered pair of independent gates encodes a 1
/// (click then no-click): e^-mu (1 - e^-mu). By symmetry this also equals
/// the probability of a 0, which is what makes the pair coding unbiased.
[[nodiscard]] double bit_probability(double mu);

/// Expected random bits per applied gate; numerically identical to
/// bit_probability and bounded by 1/4.
[[nodiscard]] double extraction_efficiency(double mu);

/// The mu that maximizes extraction_efficiency: ln 2.
[[nodiscard]] double optimal_mu() noexcept;

/// Endpoint-inclusive uniform grid of (mu, efficiency) points.
[[nodiscard]] std::vector<EfficiencyPoint> efficiency_curve(double mu_min, double mu_max,
                                                            std::size_t steps);

}  // namespace ptrng::theory
