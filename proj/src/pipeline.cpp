#include "ptrng/pipeline.hpp"

#include <stdexcept>

#include "ptrng/theory.hpp"

namespace ptrng {

void validate(const RunConfig& config) {
    validate(config.source);
    validate(config.detector);
    if (config.n_gates < 2) throw std::invalid_argument("RunConfig: n_gates must be >= 2");
    if (config.substream_bits < 100)
        throw std::invalid_argument("RunConfig: substream_bits must be >= 100");
}

double effective_mu(const RunConfig& config) {
    return config.detector.eta * config.source.lambda;
}

PipelineResult run_pipeline(const RunConfig& config) {
    validate(config);
    GateSimulator simulator{config.source, config.detector, {config.seed, config.stream_id}};
    VonNeumannExtractor extractor{config.pairing};
    extractor.reserve_bits(static_cast<std::size_t>(
        theory::extraction_efficiency(effective_mu(config)) * static_cast<double>(config.n_gates) +
        1024.0));
    for (std::uint64_t i = 0; i < config.n_gates; ++i) extractor.push_gate(simulator.next());
    return {extractor.take_bits(), extractor.stats()};
}

PipelineResult run_pipeline_until_bits(const RunConfig& config, std::uint64_t target_bits,
                                       std::uint64_t max_gates) {
    validate(config);
    if (max_gates == 0) {
        // Assume at least ~1e-3 bits per raw gate; generous for any sane
        // operating point, finite for pathological ones.
        max_gates = 1000 * target_bits + 1'000'000;
    }
    GateSimulator simulator{config.source, config.detector, {config.seed, config.stream_id}};
    VonNeumannExtractor extractor{config.pairing};
    extractor.reserve_bits(target_bits);
    std::uint64_t gates = 0;
    while (extractor.stats().bits_emitted < target_bits && gates < max_gates) {
        extractor.push_gate(simulator.next());
        ++gates;
    }
    PipelineResult result{extractor.take_bits(), extractor.stats()};
    result.bits.truncate(target_bits);
    return result;
}

bool battery_passes(const BatteryReport& report, const BatteryThresholds& thresholds) {
    for (const auto& [name, pvalue] : report.ks_final)
        if (pvalue.value < thresholds.min_ks_pvalue) return false;
    for (const auto& [name, proportion] : report.pass_proportion)
        if (proportion.proportion < proportion.low || proportion.proportion > proportion.high)
            return false;
    return true;
}

nlohmann::json to_json(const RunConfig& config) {
    return {
        {"lambda", config.source.lambda},
        {"rep_rate_hz", config.source.rep_rate_hz},
        {"eta", config.detector.eta},
        {"dark_prob", config.detector.dark_prob},
        {"dead_time_gates", config.detector.dead_time_gates},
        {"afterpulse_prob", config.detector.afterpulse_prob},
        {"afterpulse_tau_gates", config.detector.afterpulse_tau_gates},
        {"gate_width_ns", config.detector.gate_width_ns},
        {"n_gates", config.n_gates},
        {"seed", config.seed},
        {"stream_id", config.stream_id},
        {"format", format_name(config.format)},
        {"substream_bits", config.substream_bits},
        {"pairing",
         config.pairing == PairingPolicy::straddle_gaps ? "straddle" : "restart"},
    };
}

nlohmann::json to_json(const ExtractionStats& stats) {
    return {
        {"gates_applied", stats.gates_applied},
        {"pairs_scanned", stats.pairs_scanned},
        {"bits_emitted", stats.bits_emitted},
        {"ones_emitted", stats.ones_emitted},
        {"discarded_pairs", stats.discarded_pairs},
    };
}

nlohmann::json to_json(const EntReport& report) {
    return {
        {"entropy_bits_per_bit", report.entropy_bits_per_bit},
        {"chi_square_stat", report.chi_square_stat},
        {"chi_square_exceed_prob", report.chi_square_exceed_prob},
        {"arithmetic_mean", report.arithmetic_mean},
        {"monte_carlo_pi", report.monte_carlo_pi},
        {"monte_carlo_points", report.monte_carlo_points},
        {"serial_correlation", report.serial_correlation},
    };
}

nlohmann::json to_json(const BatteryReport& report) {
    nlohmann::json sts = nlohmann::json::object();
    for (const auto& [name, pvalues] : report.sts_pvalues) {
        nlohmann::json list = nlohmann::json::array();
        for (const PValue& p : pvalues) list.push_back(p.value);
        sts[name] = std::move(list);
    }
    nlohmann::json ks = nlohmann::json::object();
    for (const auto& [name, pvalue] : report.ks_final) ks[name] = pvalue.value;
    nlohmann::json proportions = nlohmann::json::object();
    for (const auto& [name, p] : report.pass_proportion)
        proportions[name] = {{"proportion", p.proportion}, {"low", p.low}, {"high", p.high}};
    return {
        {"ent", to_json(report.ent)},
        {"sts_pvalues", std::move(sts)},
        {"ks_final", std::move(ks)},
        {"pass_proportion", std::move(proportions)},
        {"substreams", report.substreams},
        {"substream_bits", report.substream_bits},
        {"alpha", report.alpha},
    };
}

nlohmann::json stats_report_json(const RunConfig& config, const ExtractionStats& stats) {
    return {
        {"config", to_json(config)},
        {"mu_effective", effective_mu(config)},
        {"stats", to_json(stats)},
        {"efficiency", measured_efficiency(stats)},
    };
}

}  // namespace ptrng
