#include "ptrng/extractor.hpp"

namespace ptrng {

double measured_efficiency(const ExtractionStats& stats) {
    if (stats.gates_applied == 0) return 0.0;
    return static_cast<double>(stats.bits_emitted) / static_cast<double>(stats.gates_applied);
}

std::pair<BitStream, ExtractionStats> von_neumann_extract(const std::vector<bool>& clicks) {
    VonNeumannExtractor extractor;
    for (const bool click : clicks) extractor.push_click(click);
    return {extractor.take_bits(), extractor.stats()};
}

std::pair<BitStream, ExtractionStats> extract_from_gates(const std::vector<GateRecord>& records,
                                                         PairingPolicy policy) {
    VonNeumannExtractor extractor{policy};
    for (const GateRecord& record : records) extractor.push_gate(record);
    return {extractor.take_bits(), extractor.stats()};
}

}  // namespace ptrng
