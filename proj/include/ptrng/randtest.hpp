#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ptrng/bitstream.hpp"

namespace ptrng {

/// ENT-style metrics over a whole stream.
struct EntReport {
    double entropy_bits_per_bit = 0.0;
    double chi_square_stat = 0.0;
    double chi_square_exceed_prob = 0.0;
    double arithmetic_mean = 0.0;
    double monte_carlo_pi = 0.0;
    std::uint64_t monte_carlo_points = 0;
    double serial_correlation = 0.0;
};

/// A p-value tagged with the test that produced it.
struct PValue {
    double value = 0.0;
    std::string test_name;
};

/// Fraction of substreams passing a test, with its 3-sigma binomial band.
struct Proportion {
    double proportion = 0.0;
    double low = 0.0;
    double high = 0.0;
};

/// Full battery output: ENT on the whole stream, the STS subset per
/// substream, KS-aggregated final p-values and pass proportions per test.
struct BatteryReport {
    EntReport ent;
    std::map<std::string, std::vector<PValue>> sts_pvalues;
    std::map<std::string, PValue> ks_final;
    std::map<std::string, Proportion> pass_proportion;
    std::uint64_t substreams = 0;
    std::uint64_t substream_bits = 0;
    double alpha = 0.01;
};

// ---------------------------------------------------------------------------
// ENT metrics
// ---------------------------------------------------------------------------

/// Empirical binary entropy -p0 log2 p0 - p1 log2 p1, with 0 log 0 = 0.
[[nodiscard]] double shannon_entropy_per_bit(const BitStream& bits);

/// Bit-level chi-square against equiprobable bits: (stat, exceed probability),
/// one degree of freedom.
[[nodiscard]] std::pair<double, double> chi_square_bits(const BitStream& bits);

/// Probability that a 1-dof chi-square exceeds `stat`: Q(1/2, stat/2).
[[nodiscard]] double chi_square_exceed_prob(double stat);

/// Ones fraction of the stream.
[[nodiscard]] double arithmetic_mean(const BitStream& bits);

/// Monte Carlo estimate of pi from non-overlapping 48-bit chunks: the first
/// 24 bits are x, the next 24 are y, both normalized by 2^24; a point counts
/// as inside on x^2 + y^2 <= 1 (closed disk). Returns (estimate, points).
[[nodiscard]] std::pair<double, std::uint64_t> monte_carlo_pi(const BitStream& bits);

/// Lag-1 serial correlation coefficient with wraparound of the last term
/// (the classic ENT recurrence). Throws on constant input.
[[nodiscard]] double serial_correlation(const BitStream& bits);

/// All five metrics in one report.
[[nodiscard]] EntReport ent_report(const BitStream& bits);

// ---------------------------------------------------------------------------
// STS subset
// ---------------------------------------------------------------------------

/// Streams shorter than this are rejected by the STS-subset tests; the
/// asymptotic reference distributions need a minimum length to apply.
inline constexpr std::uint64_t kStsMinBits = 100;

/// Smallest block length block_frequency accepts.
inline constexpr std::uint32_t kMinBlockLen = 20;

/// Default block length used by the battery.
inline constexpr std::uint32_t kDefaultBlockLen = 128;

// Closed-form p-value kernels. The BitStream front ends below delegate to
// these; they are exposed so the formulas can be exercised on inputs of any
// size.
[[nodiscard]] double monobit_pvalue(std::uint64_t ones, std::uint64_t n);
[[nodiscard]] double block_frequency_pvalue(double chi_square, std::uint64_t n_blocks);
[[nodiscard]] double runs_pvalue(std::uint64_t runs, std::uint64_t n, double ones_fraction);

/// Frequency (monobit) test: p = erfc(|sum(2b - 1)| / sqrt(n) / sqrt(2)).
[[nodiscard]] PValue frequency_monobit(const BitStream& bits);

/// Block-frequency test over full blocks of block_len bits:
/// chi^2 = 4 M sum (pi_i - 1/2)^2, p = Q(N/2, chi^2/2).
[[nodiscard]] PValue block_frequency(const BitStream& bits,
                                     std::uint32_t block_len = kDefaultBlockLen);

/// Runs test: V = value changes + 1; requires |pi - 1/2| < 2/sqrt(n) as a
/// prerequisite, else p = 0 by convention.
[[nodiscard]] PValue runs_test(const BitStream& bits);

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

/// One-sample Kolmogorov-Smirnov test of the p-values against Uniform(0, 1),
/// with the Stephens small-sample correction. Needs at least 5 values.
[[nodiscard]] PValue ks_uniform(const std::vector<PValue>& pvalues);

/// Fraction of p-values >= alpha, with band (1 - alpha) +- 3 sqrt(alpha
/// (1 - alpha) / m) clipped to [0, 1]. Needs m >= 10 and alpha in (0, 0.5).
[[nodiscard]] Proportion pass_proportion(const std::vector<PValue>& pvalues, double alpha);

/// ENT metrics on the whole stream, the STS subset on each full substream,
/// then KS aggregation and pass proportions per test.
[[nodiscard]] BatteryReport run_battery(const BitStream& bits, std::uint64_t substream_bits,
                                        double alpha = 0.01);

/// Lag-1 sample autocorrelation of a boolean sequence (detector diagnostics;
/// no wraparound). Throws on constant input.
[[nodiscard]] double lag1_autocorrelation(const std::vector<bool>& xs);

}  // namespace ptrng
