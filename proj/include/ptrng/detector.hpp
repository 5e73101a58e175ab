#pragma once
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ptrng/random.hpp"
#include "ptrng/source.hpp"

namespace ptrng {

/// Gated Geiger-mode APD parameters. gate_width_ns is carried as metadata
/// only: its physical effect is already folded into dark_prob.
struct DetectorConfig {
    double eta = 0.10;                  // detection efficiency per photon
    double dark_prob = 3.0e-5;          // dark-count probability per applied gate
    std::uint32_t dead_time_gates = 8;  // gates suppressed after an avalanche
    double afterpulse_prob = 0.05;      // trap amplitude right after an avalanche
    double afterpulse_tau_gates = 3.0;  // trap emission lifetime, in gate units
    double gate_width_ns = 2.5;
};

/// Throws std::invalid_argument when a field is out of range.
void validate(const DetectorConfig& config);

/// Mutable detector state threaded through consecutive gates.
struct DetectorState {
    std::uint32_t gates_remaining_dead = 0;
    std::optional<std::uint64_t> last_avalanche_gate;
};

/// One detector gate; applied means not suppressed by dead time, and only an
/// applied gate can click.
struct GateRecord {
    std::uint64_t index;
    bool applied;
    bool click;
};

/// Advance the detector by one gate.
///
/// A suppressed gate consumes no randomness. An applied gate clicks on the OR
/// of three independent events: signal (each photon detected with probability
/// eta), dark count, and afterpulse with probability
/// afterpulse_prob * exp(-gates_since_avalanche / afterpulse_tau_gates).
/// The draw order is fixed (photons, then dark, then afterpulse) and later
/// draws are skipped once the gate has clicked; the OR distribution is
/// unchanged and the sequence stays reproducible. Any click — signal, dark or
/// afterpulse — starts the dead time and refills the trap, because the APD
/// cannot distinguish avalanche causes.
GateRecord detect_gate(DetectorState& state, const DetectorConfig& config,
                       std::uint32_t photon_count, std::uint64_t gate_index,
                       Xoshiro256StarStar& rng);

/// Streaming source + detector loop: one gate per call, nothing materialized.
/// A single engine drives both the photon-number draws and the detection
/// draws, interleaved in gate order.
class GateSimulator {
public:
    GateSimulator(const SourceConfig& source, const DetectorConfig& detector,
                  RandomStream stream);

    GateRecord next();

    [[nodiscard]] const DetectorState& state() const noexcept { return state_; }

private:
    SourceConfig source_;
    DetectorConfig detector_;
    Xoshiro256StarStar rng_;
    DetectorState state_;
    std::uint64_t next_index_ = 0;
};

/// Materialized run of exactly n_gates records, deterministic per stream.
[[nodiscard]] std::vector<GateRecord> run_gates(const SourceConfig& source,
                                                const DetectorConfig& detector,
                                                std::uint64_t n_gates, RandomStream stream);

/// Clicks per applied gate; throws std::domain_error when no gate was applied.
[[nodiscard]] double click_rate(const std::vector<GateRecord>& records);

/// Debug dump: header plus one `index,applied,click` row per gate, 0/1 booleans.
void write_gate_csv(std::ostream& out, const std::vector<GateRecord>& records);

}  // namespace ptrng
