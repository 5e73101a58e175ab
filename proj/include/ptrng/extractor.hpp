#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "ptrng/bitstream.hpp"
#include "ptrng/detector.hpp"

namespace ptrng {

/// How pairing treats dead-time gaps between applied gates.
enum class PairingPolicy {
    straddle_gaps,   // a pair may span suppressed gates (default)
    restart_on_gap,  // a suppressed gate drops a pending first element
};

/// Bookkeeping for one extraction run. Invariants:
/// bits_emitted + discarded_pairs = pairs_scanned, ones_emitted <= bits_emitted.
struct ExtractionStats {
    std::uint64_t gates_applied = 0;
    std::uint64_t pairs_scanned = 0;
    std::uint64_t bits_emitted = 0;
    std::uint64_t ones_emitted = 0;
    std::uint64_t discarded_pairs = 0;
};

/// Random bits per applied gate; 0 when nothing was applied.
[[nodiscard]] double measured_efficiency(const ExtractionStats& stats);

/// Streaming von Neumann pair coder over the applied-gate click sequence:
/// non-overlapping left-to-right pairs, (click, no-click) -> 1,
/// (no-click, click) -> 0, equal pairs discarded, trailing element ignored.
class VonNeumannExtractor {
public:
    explicit VonNeumannExtractor(PairingPolicy policy = PairingPolicy::straddle_gaps)
        : policy_{policy} {}

    void push_click(bool click) {
        ++stats_.gates_applied;
        if (!have_pending_) {
            pending_ = click;
            have_pending_ = true;
            return;
        }
        have_pending_ = false;
        ++stats_.pairs_scanned;
        if (pending_ == click) {
            ++stats_.discarded_pairs;
            return;
        }
        // The pair is (pending_, click) with pending_ != click, so the first
        // element is the emitted bit for both codings.
        out_.append_bit(pending_);
        ++stats_.bits_emitted;
        if (pending_) ++stats_.ones_emitted;
    }

    void push_gate(const GateRecord& record) {
        if (!record.applied) {
            if (policy_ == PairingPolicy::restart_on_gap) have_pending_ = false;
            return;
        }
        push_click(record.click);
    }

    [[nodiscard]] const BitStream& bits() const noexcept { return out_; }
    [[nodiscard]] const ExtractionStats& stats() const noexcept { return stats_; }
    [[nodiscard]] BitStream take_bits() { return std::move(out_); }
    void reserve_bits(std::size_t n_bits) { out_.reserve_bits(n_bits); }

private:
    BitStream out_;
    ExtractionStats stats_{};
    PairingPolicy policy_;
    bool have_pending_ = false;
    bool pending_ = false;
};

/// Batch von Neumann extraction from a plain click sequence.
[[nodiscard]] std::pair<BitStream, ExtractionStats> von_neumann_extract(
    const std::vector<bool>& clicks);

/// Filter the records to applied gates and extract; suppressed gates produce
/// no detection event, so under the default policy a pair may straddle them.
[[nodiscard]] std::pair<BitStream, ExtractionStats> extract_from_gates(
    const std::vector<GateRecord>& records,
    PairingPolicy policy = PairingPolicy::straddle_gaps);

}  // namespace ptrng
