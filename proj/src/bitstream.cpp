#include "ptrng/bitstream.hpp"

#include <bit>
#include <stdexcept>

namespace ptrng {

std::uint64_t BitStream::count_ones() const noexcept {
    // Pad bits are guaranteed zero, so a straight popcount is exact.
    std::uint64_t ones = 0;
    for (const std::uint8_t byte : payload_) ones += std::popcount(byte);
    return ones;
}

BitStream BitStream::slice(std::size_t first_bit, std::size_t n_bits) const {
    if (first_bit + n_bits > bit_length_)
        throw std::out_of_range("BitStream::slice: range exceeds bit_length");
    BitStream out;
    out.reserve_bits(n_bits);
    if ((first_bit & 7u) == 0) {
        const std::size_t first_byte = first_bit >> 3;
        const std::size_t n_bytes = (n_bits + 7) >> 3;
        out.payload_.assign(payload_.begin() + static_cast<std::ptrdiff_t>(first_byte),
                            payload_.begin() + static_cast<std::ptrdiff_t>(first_byte + n_bytes));
        out.bit_length_ = n_bits;
        out.truncate(n_bits);  // clears pad bits copied from mid-stream bytes
        return out;
    }
    for (std::size_t i = 0; i < n_bits; ++i) out.append_bit(bit(first_bit + i));
    return out;
}

void BitStream::truncate(std::size_t n_bits) {
    if (n_bits >= bit_length_) return;
    bit_length_ = n_bits;
    payload_.resize((n_bits + 7) >> 3);
    const std::size_t used = n_bits & 7u;
    if (used != 0) payload_.back() &= static_cast<std::uint8_t>(0xFF00u >> used);
}

void BitStream::append(const BitStream& other) {
    if ((bit_length_ & 7u) == 0) {
        payload_.insert(payload_.end(), other.payload_.begin(), other.payload_.end());
        bit_length_ += other.bit_length_;
        return;
    }
    for (std::size_t i = 0; i < other.bit_length_; ++i) append_bit(other.bit(i));
}

BitStream BitStream::from_bytes(std::vector<std::uint8_t> bytes, std::size_t bit_length) {
    if (bit_length > bytes.size() * 8)
        throw std::invalid_argument("BitStream::from_bytes: bit_length exceeds payload");
    BitStream out;
    out.payload_ = std::move(bytes);
    out.bit_length_ = out.payload_.size() * 8;
    out.truncate(bit_length);
    return out;
}

BitStream pack_bits(const std::vector<std::uint8_t>& bits) {
    BitStream out;
    out.reserve_bits(bits.size());
    for (const std::uint8_t b : bits) out.append_bit(b != 0);
    return out;
}

std::vector<std::uint8_t> unpack_bits(const BitStream& stream) {
    std::vector<std::uint8_t> bits;
    bits.reserve(stream.bit_length());
    for (std::size_t i = 0; i < stream.bit_length(); ++i)
        bits.push_back(stream.bit(i) ? 1 : 0);
    return bits;
}

}  // namespace ptrng
