#include "ptrng/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace ptrng::theory {

double poisson_pmf(double mu, std::uint64_t n) {
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw std::domain_error("poisson_pmf: mu must be finite and non-negative");
    if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
    const double nd = static_cast<double>(n);
    const double log_pmf = nd * std::log(mu) - mu - std::lgamma(nd + 1.0);
    return std::exp(log_pmf);
}

double bit_probability(double mu) {
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw std::domain_error("bit_probability: mu must be finite and non-negative");
    // Written as p(1-p) with p = e^-mu so the 1/4 bound survives rounding and
    // P(1) = P(0) holds bit-exactly.
    const double p_vacuum = std::exp(-mu);
    return p_vacuum * (1.0 - p_vacuum);
}

double extraction_efficiency(double mu) { return bit_probability(mu); }

double optimal_mu() noexcept { return std::log(2.0); }

std::vector<EfficiencyPoint> efficiency_curve(double mu_min, double mu_max, std::size_t steps) {
    if (!(mu_min >= 0.0) || !(mu_min < mu_max) || !std::isfinite(mu_max))
        throw std::domain_error("efficiency_curve: require 0 <= mu_min < mu_max");
    if (steps < 2) throw std::domain_error("efficiency_curve: require steps >= 2");

    std::vector<EfficiencyPoint> curve;
    curve.reserve(steps);
    const double span = mu_max - mu_min;
    for (std::size_t i = 0; i < steps; ++i) {
        const double mu = (i + 1 == steps)
                              ? mu_max
                              : mu_min + span * static_cast<double>(i) / static_cast<double>(steps - 1);
        curve.push_back({mu, extraction_efficiency(mu)});
    }
    return curve;
}

}  // namespace ptrng::theory
