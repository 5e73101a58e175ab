#pragma once
#include <cstdint>

#include <json.hpp>

#include "ptrng/detector.hpp"
#include "ptrng/extractor.hpp"
#include "ptrng/formats.hpp"
#include "ptrng/randtest.hpp"
#include "ptrng/source.hpp"

namespace ptrng {

/// Everything one reproducible run needs. The defaults encode the reference
/// operating point: 1 MHz pulses at the optimal detected mean, eta 10%,
/// dark probability 3e-5 per 2.5 ns gate, 8 gates of dead time.
struct RunConfig {
    SourceConfig source;
    DetectorConfig detector;
    std::uint64_t n_gates = 4'000'000;
    std::uint64_t seed = 1;
    std::uint64_t stream_id = 0;
    OutputFormat format = OutputFormat::raw;
    std::uint64_t substream_bits = 1'000'000;
    PairingPolicy pairing = PairingPolicy::straddle_gaps;
};

/// Throws std::invalid_argument when any field is out of range.
void validate(const RunConfig& config);

/// The detected mean photon number eta * lambda the run operates at.
[[nodiscard]] double effective_mu(const RunConfig& config);

struct PipelineResult {
    BitStream bits;
    ExtractionStats stats;
};

/// Source -> detector -> extractor over exactly config.n_gates gates,
/// streaming (no gate records are materialized).
[[nodiscard]] PipelineResult run_pipeline(const RunConfig& config);

/// Like run_pipeline but runs until target_bits were extracted, then
/// truncates to exactly target_bits. Stops early at max_gates (0 picks a
/// generous cap) so a zero-efficiency config cannot loop forever; callers
/// should check the resulting length.
[[nodiscard]] PipelineResult run_pipeline_until_bits(const RunConfig& config,
                                                     std::uint64_t target_bits,
                                                     std::uint64_t max_gates = 0);

/// Exit-code thresholds of the battery verdict.
struct BatteryThresholds {
    double alpha = 0.01;
    double min_ks_pvalue = 1.0e-4;
};

/// True when every KS-final p-value clears min_ks_pvalue and every pass
/// proportion lies inside its band.
[[nodiscard]] bool battery_passes(const BatteryReport& report,
                                  const BatteryThresholds& thresholds);

// JSON serialization with stable field names; reports embed the full
// resolved config so a run is reproducible from its report alone.
[[nodiscard]] nlohmann::json to_json(const RunConfig& config);
[[nodiscard]] nlohmann::json to_json(const ExtractionStats& stats);
[[nodiscard]] nlohmann::json to_json(const EntReport& report);
[[nodiscard]] nlohmann::json to_json(const BatteryReport& report);
[[nodiscard]] nlohmann::json stats_report_json(const RunConfig& config,
                                               const ExtractionStats& stats);

}  // namespace ptrng
