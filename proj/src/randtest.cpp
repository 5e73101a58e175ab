#include "ptrng/randtest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "ptrng/special_functions.hpp"

namespace ptrng {

namespace {

const std::string kMonobitName = "monobit";
const std::string kBlockFrequencyName = "block_frequency";
const std::string kRunsName = "runs";

std::uint64_t require_bits(const BitStream& bits, std::uint64_t minimum, const char* what) {
    const std::uint64_t n = bits.bit_length();
    if (n < minimum) throw std::domain_error(std::string{what} + ": stream too short");
    return n;
}

}  // namespace

// ---------------------------------------------------------------------------
// ENT metrics
// ---------------------------------------------------------------------------

double shannon_entropy_per_bit(const BitStream& bits) {
    const std::uint64_t n = require_bits(bits, 1, "shannon_entropy_per_bit");
    const double p1 = static_cast<double>(bits.count_ones()) / static_cast<double>(n);
    const double p0 = 1.0 - p1;
    double entropy = 0.0;
    if (p0 > 0.0) entropy -= p0 * std::log2(p0);
    if (p1 > 0.0) entropy -= p1 * std::log2(p1);
    return entropy;
}

std::pair<double, double> chi_square_bits(const BitStream& bits) {
    const std::uint64_t n = require_bits(bits, kStsMinBits, "chi_square_bits");
    const double half_n = static_cast<double>(n) / 2.0;
    const double deviation = static_cast<double>(bits.count_ones()) - half_n;
    // Both categories deviate by the same magnitude, so the two terms of the
    // 1-dof statistic are equal.
    const double stat = 2.0 * deviation * deviation / half_n;
    return {stat, chi_square_exceed_prob(stat)};
}

double chi_square_exceed_prob(double stat) {
    if (!(stat >= 0.0) || !std::isfinite(stat))
        throw std::domain_error("chi_square_exceed_prob: stat must be non-negative");
    return gamma_q(0.5, stat / 2.0);
}

double arithmetic_mean(const BitStream& bits) {
    const std::uint64_t n = require_bits(bits, 1, "arithmetic_mean");
    return static_cast<double>(bits.count_ones()) / static_cast<double>(n);
}

std::pair<double, std::uint64_t> monte_carlo_pi(const BitStream& bits) {
    const std::uint64_t n = require_bits(bits, 48, "monte_carlo_pi");
    const std::uint64_t points = n / 48;
    const std::vector<std::uint8_t>& bytes = bits.bytes();
    std::uint64_t inside = 0;
    for (std::uint64_t p = 0; p < points; ++p) {
        // 48-bit chunks start on byte boundaries: 6 bytes, x then y.
        const std::size_t base = static_cast<std::size_t>(p) * 6;
        const std::uint32_t xi = (static_cast<std::uint32_t>(bytes[base]) << 16) |
                                 (static_cast<std::uint32_t>(bytes[base + 1]) << 8) |
                                 bytes[base + 2];
        const std::uint32_t yi = (static_cast<std::uint32_t>(bytes[base + 3]) << 16) |
                                 (static_cast<std::uint32_t>(bytes[base + 4]) << 8) |
                                 bytes[base + 5];
        const double x = static_cast<double>(xi) / 16777216.0;
        const double y = static_cast<double>(yi) / 16777216.0;
        if (x * x + y * y <= 1.0) ++inside;
    }
    const double estimate = 4.0 * static_cast<double>(inside) / static_cast<double>(points);
    return {estimate, points};
}

double serial_correlation(const BitStream& bits) {
    const std::uint64_t n = require_bits(bits, 2, "serial_correlation");
    // ENT recurrence specialized to bits: with x in {0,1}, sum x^2 = sum x.
    // All accumulators stay exact in 64-bit integers for any realistic n.
    std::uint64_t adjacent_ones = 0;  // sum of x_i * x_{i+1}, wrapping the last term
    bool prev = bits.bit(0);
    for (std::uint64_t i = 1; i < n; ++i) {
        const bool cur = bits.bit(i);
        adjacent_ones += prev && cur;
        prev = cur;
    }
    adjacent_ones += prev && bits.bit(0);

    const std::uint64_t ones = bits.count_ones();
    const double numerator = static_cast<double>(static_cast<std::int64_t>(n * adjacent_ones) -
                                                 static_cast<std::int64_t>(ones * ones));
    const double denominator = static_cast<double>(static_cast<std::int64_t>(n * ones) -
                                                   static_cast<std::int64_t>(ones * ones));
    if (denominator == 0.0)
        throw std::domain_error("serial_correlation: degenerate (constant) stream");
    return numerator / denominator;
}

EntReport ent_report(const BitStream& bits) {
    EntReport report;
    report.entropy_bits_per_bit = shannon_entropy_per_bit(bits);
    const auto [stat, exceed] = chi_square_bits(bits);
    report.chi_square_stat = stat;
    report.chi_square_exceed_prob = exceed;
    report.arithmetic_mean = arithmetic_mean(bits);
    const auto [pi_estimate, points] = monte_carlo_pi(bits);
    report.monte_carlo_pi = pi_estimate;
    report.monte_carlo_points = points;
    report.serial_correlation = serial_correlation(bits);
    return report;
}

// ---------------------------------------------------------------------------
// STS subset
// ---------------------------------------------------------------------------

double monobit_pvalue(std::uint64_t ones, std::uint64_t n) {
    if (n < 1) throw std::domain_error("monobit_pvalue: n must be >= 1");
    if (ones > n) throw std::domain_error("monobit_pvalue: ones exceeds n");
    const double s = std::fabs(2.0 * static_cast<double>(ones) - static_cast<double>(n)) /
                     std::sqrt(static_cast<double>(n));
    return std::erfc(s / std::sqrt(2.0));
}

double block_frequency_pvalue(double chi_square, std::uint64_t n_blocks) {
    if (n_blocks < 1) throw std::domain_error("block_frequency_pvalue: need >= 1 block");
    if (!(chi_square >= 0.0))
        throw std::domain_error("block_frequency_pvalue: chi_square must be non-negative");
    return gamma_q(static_cast<double>(n_blocks) / 2.0, chi_square / 2.0);
}

double runs_pvalue(std::uint64_t runs, std::uint64_t n, double ones_fraction) {
    if (n < 2) throw std::domain_error("runs_pvalue: n must be >= 2");
    const double pi = ones_fraction;
    const double nd = static_cast<double>(n);
    const double expected = 2.0 * nd * pi * (1.0 - pi);
    const double scale = 2.0 * std::sqrt(2.0 * nd) * pi * (1.0 - pi);
    return std::erfc(std::fabs(static_cast<double>(runs) - expected) / scale);
}

PValue frequency_monobit(const BitStream& bits) {
    const std::uint64_t n = require_bits(bits, kStsMinBits, "frequency_monobit");
    return {monobit_pvalue(bits.count_ones(), n), kMonobitName};
}

PValue block_frequency(const BitStream& bits, std::uint32_t block_len) {
    const std::uint64_t n = require_bits(bits, kStsMinBits, "block_frequency");
    if (block_len < kMinBlockLen)
        throw std::domain_error("block_frequency: block_len must be >= 20");
    const std::uint64_t n_blocks = n / block_len;
    if (n_blocks < 1) throw std::domain_error("block_frequency: no full block");

    const double half_block = static_cast<double>(block_len) / 2.0;
    double sum_sq = 0.0;
    if (block_len % 8 == 0) {
        // Blocks are byte-aligned: count ones with popcount.
        const std::vector<std::uint8_t>& bytes = bits.bytes();
        const std::size_t bytes_per_block = block_len / 8;
        for (std::uint64_t b = 0; b < n_blocks; ++b) {
            const std::size_t base = static_cast<std::size_t>(b) * bytes_per_block;
            std::uint32_t ones = 0;
            for (std::size_t i = 0; i < bytes_per_block; ++i)
                ones += static_cast<std::uint32_t>(std::popcount(bytes[base + i]));
            const double deviation = static_cast<double>(ones) - half_block;
            sum_sq += deviation * deviation;
        }
    } else {
        for (std::uint64_t b = 0; b < n_blocks; ++b) {
            std::uint32_t ones = 0;
            const std::uint64_t base = b * block_len;
            for (std::uint32_t i = 0; i < block_len; ++i) ones += bits.bit(base + i);
            const double deviation = static_cast<double>(ones) - half_block;
            sum_sq += deviation * deviation;
        }
    }
    const double chi_square = 4.0 / static_cast<double>(block_len) * sum_sq;
    return {block_frequency_pvalue(chi_square, n_blocks), kBlockFrequencyName};
}

PValue runs_test(const BitStream& bits) {
    const std::uint64_t n = require_bits(bits, kStsMinBits, "runs_test");
    const double pi =
        static_cast<double>(bits.count_ones()) / static_cast<double>(n);
    // Prerequisite from the frequency test: a stream that already fails the
    // bias bound gets p = 0 by convention.
    if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(static_cast<double>(n)))
        return {0.0, kRunsName};

    std::uint64_t runs = 1;
    bool prev = bits.bit(0);
    for (std::uint64_t i = 1; i < n; ++i) {
        const bool cur = bits.bit(i);
        runs += cur != prev;
        prev = cur;
    }
    return {runs_pvalue(runs, n, pi), kRunsName};
}

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

PValue ks_uniform(const std::vector<PValue>& pvalues) {
    const std::size_t m = pvalues.size();
    if (m < 5) throw std::domain_error("ks_uniform: need at least 5 p-values");
    std::vector<double> sorted;
    sorted.reserve(m);
    for (const PValue& p : pvalues) {
        if (!(p.value >= 0.0 && p.value <= 1.0))
            throw std::domain_error("ks_uniform: p-value outside [0, 1]");
        sorted.push_back(p.value);
    }
    std::sort(sorted.begin(), sorted.end());

    const double md = static_cast<double>(m);
    double d_stat = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double ecdf_above = static_cast<double>(i + 1) / md - sorted[i];
        const double ecdf_below = sorted[i] - static_cast<double>(i) / md;
        d_stat = std::max({d_stat, ecdf_above, ecdf_below});
    }
    // Stephens' small-sample correction maps D onto the asymptotic tail.
    const double t = d_stat * (std::sqrt(md) + 0.12 + 0.11 / std::sqrt(md));
    return {ks_tail(t), pvalues.front().test_name};
}

Proportion pass_proportion(const std::vector<PValue>& pvalues, double alpha) {
    const std::size_t m = pvalues.size();
    if (m < 10) throw std::domain_error("pass_proportion: need at least 10 p-values");
    if (!(alpha > 0.0 && alpha < 0.5))
        throw std::domain_error("pass_proportion: alpha must lie in (0, 0.5)");
    std::size_t passed = 0;
    for (const PValue& p : pvalues) passed += p.value >= alpha;

    const double md = static_cast<double>(m);
    const double half_band = 3.0 * std::sqrt(alpha * (1.0 - alpha) / md);
    Proportion result;
    result.proportion = static_cast<double>(passed) / md;
    result.low = std::max(0.0, (1.0 - alpha) - half_band);
    result.high = std::min(1.0, (1.0 - alpha) + half_band);
    return result;
}

BatteryReport run_battery(const BitStream& bits, std::uint64_t substream_bits, double alpha) {
    if (substream_bits < kStsMinBits)
        throw std::domain_error("run_battery: substream_bits must be >= 100");
    const std::uint64_t n = require_bits(bits, substream_bits, "run_battery");

    BatteryReport report;
    report.substream_bits = substream_bits;
    report.substreams = n / substream_bits;
    report.alpha = alpha;
    report.ent = ent_report(bits);

    auto& monobit_ps = report.sts_pvalues[kMonobitName];
    auto& block_ps = report.sts_pvalues[kBlockFrequencyName];
    auto& runs_ps = report.sts_pvalues[kRunsName];
    for (std::uint64_t s = 0; s < report.substreams; ++s) {
        const BitStream sub = bits.slice(s * substream_bits, substream_bits);
        monobit_ps.push_back(frequency_monobit(sub));
        block_ps.push_back(block_frequency(sub));
        runs_ps.push_back(runs_test(sub));
    }
    for (const auto& [name, pvalues] : report.sts_pvalues) {
        report.ks_final[name] = ks_uniform(pvalues);
        report.pass_proportion[name] = pass_proportion(pvalues, alpha);
    }
    return report;
}

double lag1_autocorrelation(const std::vector<bool>& xs) {
    const std::size_t n = xs.size();
    if (n < 2) throw std::domain_error("lag1_autocorrelation: need at least 2 samples");
    std::uint64_t sum = 0;
    std::uint64_t adjacent = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += xs[i];
        if (i + 1 < n) adjacent += xs[i] && xs[i + 1];
    }
    const double mean = static_cast<double>(sum) / static_cast<double>(n);
    // Boolean shortcut for sum (x_i - mean)(x_{i+1} - mean) and the variance.
    const double cross = static_cast<double>(adjacent) -
                         mean * static_cast<double>(2 * sum - xs.front() - xs.back()) +
                         static_cast<double>(n - 1) * mean * mean;
    const double variance =
        static_cast<double>(sum) - static_cast<double>(n) * mean * mean;
    if (variance == 0.0)
        throw std::domain_error("lag1_autocorrelation: degenerate (constant) sequence");
    return cross / variance;
}

}  // namespace ptrng
