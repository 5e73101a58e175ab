#include "ptrng/detector.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace ptrng {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void validate(const DetectorConfig& config) {
    if (!is_probability(config.eta))
        throw std::invalid_argument("DetectorConfig: eta must lie in [0, 1]");
    if (!is_probability(config.dark_prob))
        throw std::invalid_argument("DetectorConfig: dark_prob must lie in [0, 1]");
    if (!is_probability(config.afterpulse_prob))
        throw std::invalid_argument("DetectorConfig: afterpulse_prob must lie in [0, 1]");
    if (!(config.afterpulse_tau_gates > 0.0) || !std::isfinite(config.afterpulse_tau_gates))
        throw std::invalid_argument("DetectorConfig: afterpulse_tau_gates must be positive");
    if (!(config.gate_width_ns > 0.0) || !std::isfinite(config.gate_width_ns))
        throw std::invalid_argument("DetectorConfig: gate_width_ns must be positive");
}

GateRecord detect_gate(DetectorState& state, const DetectorConfig& config,
                       std::uint32_t photon_count, std::uint64_t gate_index,
                       Xoshiro256StarStar& rng) {
    if (state.gates_remaining_dead > 0) {
        --state.gates_remaining_dead;
        return {gate_index, false, false};
    }

    bool click = false;
    for (std::uint32_t i = 0; i < photon_count && !click; ++i)
        click = rng.bernoulli(config.eta);
    if (!click && config.dark_prob > 0.0) click = rng.bernoulli(config.dark_prob);
    if (!click && config.afterpulse_prob > 0.0 && state.last_avalanche_gate) {
        const double gates_since =
            static_cast<double>(gate_index - *state.last_avalanche_gate);
        const double amplitude =
            config.afterpulse_prob * std::exp(-gates_since / config.afterpulse_tau_gates);
        click = rng.bernoulli(amplitude);
    }

    if (click) {
        state.gates_remaining_dead = config.dead_time_gates;
        state.last_avalanche_gate = gate_index;
    }
    return {gate_index, true, click};
}

GateSimulator::GateSimulator(const SourceConfig& source, const DetectorConfig& detector,
                             RandomStream stream)
    : source_{source}, detector_{detector}, rng_{stream} {
    validate(source_);
    validate(detector_);
}

GateRecord GateSimulator::next() {
    if (state_.gates_remaining_dead > 0) {
        // Suppressed gates consume no randomness, so the photon draw is
        // skipped entirely rather than discarded.
        --state_.gates_remaining_dead;
        return {next_index_++, false, false};
    }
    const std::uint32_t photons = sample_photon_number(rng_, source_.lambda);
    return detect_gate(state_, detector_, photons, next_index_++, rng_);
}

std::vector<GateRecord> run_gates(const SourceConfig& source, const DetectorConfig& detector,
                                  std::uint64_t n_gates, RandomStream stream) {
    if (n_gates < 1) throw std::domain_error("run_gates: n_gates must be >= 1");
    GateSimulator simulator{source, detector, stream};
    std::vector<GateRecord> records;
    records.reserve(n_gates);
    for (std::uint64_t i = 0; i < n_gates; ++i) records.push_back(simulator.next());
    return records;
}

double click_rate(const std::vector<GateRecord>& records) {
    std::uint64_t applied = 0;
    std::uint64_t clicks = 0;
    for (const GateRecord& record : records) {
        applied += record.applied;
        clicks += record.click;
    }
    if (applied == 0) throw std::domain_error("click_rate: no applied gates");
    return static_cast<double>(clicks) / static_cast<double>(applied);
}

void write_gate_csv(std::ostream& out, const std::vector<GateRecord>& records) {
    out << "index,applied,click\n";
    for (const GateRecord& record : records)
        out << record.index << ',' << (record.applied ? 1 : 0) << ',' << (record.click ? 1 : 0)
            << '\n';
}

}  // namespace ptrng
